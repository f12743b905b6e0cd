#pragma once

#include <stdexcept>
#include <string>

namespace betatile {

enum class Errc {
  NotIrreducible,
  NotPisot,
  NotUnit,
  FieldMismatch,
  Overlap,
  NotSurjective,
  EmptyPart,
  BadAlpha,
  PediciniGapViolated,
  OutOfDomain,
  BudgetExceeded,
  UnknownDigit,
  InfiniteV,
  NoFixedPoint,
  DigitsNotIntegral,
  NotSofic,
  UnrenderableDimension,
  BadConfig,
  Internal,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& what) { throw Error(c, what); }

}  // namespace betatile
