#pragma once

#include <stdexcept>
#include <string>

namespace faultpath {

// Every library error carries a stable category used by the CLI exit-code map.
enum class ErrorKind {
    Format,
    Io,
    Overflow,
    TieUnbreakable,
    TieDetected,
    DuplicateEdge,
    NotAPath,
    IntervalNotOnPath,
    CaseUnmatched,
    InvalidDelete,
    TimeOutOfRange,
    DisjointnessViolated,
    InconsistentAnswer,
    Unreachable,
    InvalidArgument,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

#define FAULTPATH_DEFINE_ERROR(Name, Kind)                                   \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
    };

FAULTPATH_DEFINE_ERROR(FormatError, Format)
FAULTPATH_DEFINE_ERROR(IoError, Io)
FAULTPATH_DEFINE_ERROR(OverflowError, Overflow)
FAULTPATH_DEFINE_ERROR(TieUnbreakableError, TieUnbreakable)
FAULTPATH_DEFINE_ERROR(TieDetectedError, TieDetected)
FAULTPATH_DEFINE_ERROR(DuplicateEdgeError, DuplicateEdge)
FAULTPATH_DEFINE_ERROR(NotAPathError, NotAPath)
FAULTPATH_DEFINE_ERROR(IntervalNotOnPathError, IntervalNotOnPath)
FAULTPATH_DEFINE_ERROR(CaseUnmatchedError, CaseUnmatched)
FAULTPATH_DEFINE_ERROR(InvalidDeleteError, InvalidDelete)
FAULTPATH_DEFINE_ERROR(TimeOutOfRangeError, TimeOutOfRange)
FAULTPATH_DEFINE_ERROR(DisjointnessViolatedError, DisjointnessViolated)
FAULTPATH_DEFINE_ERROR(InconsistentAnswerError, InconsistentAnswer)
FAULTPATH_DEFINE_ERROR(UnreachableError, Unreachable)
FAULTPATH_DEFINE_ERROR(InvalidArgumentError, InvalidArgument)

#undef FAULTPATH_DEFINE_ERROR

}  // namespace faultpath
