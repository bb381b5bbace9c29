#include "zdense/cli.hpp"

#include <json.hpp>
#include <doctest.h>

#include <filesystem>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "zdense");
    std::ostringstream out, err;
    const int code = zdense::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string spec(const std::string& name) {
    return (std::filesystem::path(ZDENSE_SPECS_DIR) / (name + ".json")).string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("SHA-256 test vectors") {
    CHECK(zdense::cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(zdense::cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("decide exit codes follow the verdict") {
    CHECK(run({"decide", spec("sec8"), "--field", "R"}).code == 1);
    CHECK(run({"decide", spec("heisenberg"), "--field", "R"}).code == 0);
    CHECK(run({"decide", spec("metabelian_3_-1_-2"), "--field", "C"}).code == 2);
    CHECK(run({"decide", spec("sec8"), "--field", "Laurent:2"}).code == 2);
}

TEST_CASE("errors exit with 3") {
    CHECK(run({"decide", "/nonexistent.json"}).code == 3);
    CHECK(run({"decide", spec("sec8"), "--field", "Qp:4"}).code == 3);
    CHECK(run({"bogus"}).code == 3);
    CHECK(run({"gallery", "--example", "ex1", "-p", "4"}).code == 3);
    CHECK(run({"construct", "--poly", "x^2+1", "--gens", "/dev/null"}).code == 3);
}

TEST_CASE("help exits cleanly") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("gallery") != std::string::npos);
}

TEST_CASE("reports embed version, hash, bounds and seed") {
    const auto r = run({"decide", spec("sec8"), "--field", "R", "--seed", "4"});
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["tool"]["name"] == "zdense");
    CHECK(j["tool"]["version"] == ZDENSE_VERSION);
    CHECK(j["input_hash"].get<std::string>().size() == 64);
    CHECK(j["seed"] == 4);
    CHECK(j["bounds"].contains("exponent_bound"));
    CHECK(j["verdict"]["citations"][0] == "Prop3");
}

TEST_CASE("identical inputs give byte-identical reports") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"decide", spec("ex5"), "--field", "C"},
          std::vector<std::string>{"gallery", "--example", "ex4", "--seed", "3"},
          std::vector<std::string>{"gallery", "--example", "ex3", "--format", "text"}}) {
        CHECK(run(args).out == run(args).out);
    }
    CHECK(run({"gallery", "--example", "ex4", "--seed", "3"}).out !=
          run({"gallery", "--example", "ex4", "--seed", "4"}).out);
}

TEST_CASE("construct then verify") {
    const auto dir = std::filesystem::temp_directory_path() / "zdense_cli_test";
    std::filesystem::create_directories(dir);
    const std::string gens = (dir / "gens.json").string();
    const auto c = run({"construct", "--poly", "x^2-2", "--gens", gens});
    REQUIRE(c.code == 0);
    const auto first = run({"verify", gens, "--word-len", "4"});
    CHECK(first.code == 0);
    const auto j = nlohmann::json::parse(first.out);
    CHECK(j["density"]["pass"] == true);
    CHECK(j["margin"]["min_distance"].get<double>() > 1e-9);
    CHECK(run({"verify", gens, "--set", "cocompact", "--word-len", "4"}).code == 0);
    CHECK(run({"construct", "--poly", "x^2-2", "--gens", gens}).out == c.out);
    std::filesystem::remove_all(dir);
}

TEST_CASE("text format renders nested reports") {
    const auto r = run({"gallery", "--example", "sec8", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out.find("status: NotExists") != std::string::npos);
}

}
