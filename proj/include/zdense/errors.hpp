#pragma once

#include <stdexcept>
#include <string>

namespace zdense {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define ZDENSE_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                     \
    public:                                                         \
        explicit Name(const std::string& what) : Error(what) {}    \
    }

ZDENSE_DEFINE_ERROR(ParseError);
ZDENSE_DEFINE_ERROR(SchemaError);
ZDENSE_DEFINE_ERROR(InvalidSpec);
ZDENSE_DEFINE_ERROR(WrongVariant);
ZDENSE_DEFINE_ERROR(NotBasisGraded);
ZDENSE_DEFINE_ERROR(NotCommutative);
ZDENSE_DEFINE_ERROR(ShapeMismatch);
ZDENSE_DEFINE_ERROR(NotSquarefree);
ZDENSE_DEFINE_ERROR(NotIrreducible);
ZDENSE_DEFINE_ERROR(NotMonogenic);
ZDENSE_DEFINE_ERROR(PrecisionUnreachable);
ZDENSE_DEFINE_ERROR(SearchExhausted);
ZDENSE_DEFINE_ERROR(RankDeficient);
ZDENSE_DEFINE_ERROR(SpanDeficient);
ZDENSE_DEFINE_ERROR(ExplosionGuard);
ZDENSE_DEFINE_ERROR(HorizonUnderflow);

#undef ZDENSE_DEFINE_ERROR

}  // namespace zdense
