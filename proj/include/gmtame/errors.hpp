#pragma once

#include <stdexcept>
#include <string>

namespace gmtame {

enum class ErrorKind {
  Parse,
  NotIsolated,
  IterationCapExceeded,
  Internal,
  IrrationalSpectrum,
  NotGoodLattice,
  NotNilpotent,
  RankDeficient,
  DimensionMismatch,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::NotIsolated: return "NotIsolated";
    case ErrorKind::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorKind::Internal: return "InternalError";
    case ErrorKind::IrrationalSpectrum: return "IrrationalSpectrum";
    case ErrorKind::NotGoodLattice: return "NotGoodLattice";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

// Process exit code used by the command line front end.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::NotIsolated: return 3;
    case ErrorKind::IterationCapExceeded: return 4;
    case ErrorKind::IrrationalSpectrum: return 6;
    case ErrorKind::NotGoodLattice: return 7;
    default: return 5;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorKind::Parse, what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Thrown when an asserted mathematical invariant fails.
inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorKind::Internal, what);
}

}  // namespace gmtame
