#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace intercat {

enum class ErrorKind {
  DomainMismatch,
  ShapeMismatch,
  NotParallel,
  ObjectsDisagree,
  NotParallel2Cells,
  DomainNotDiscrete,
  NotSurjective,
  PreconditionViolated,
  CyclicGraph,
  InexactInput,
  NotCoequalising,
  NotCoequifying,
  InvalidCocone,
  InvalidLabel,
  ParseError,
  ValidationError,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotParallel: return "NotParallel";
    case ErrorKind::ObjectsDisagree: return "ObjectsDisagree";
    case ErrorKind::NotParallel2Cells: return "NotParallel2Cells";
    case ErrorKind::DomainNotDiscrete: return "DomainNotDiscrete";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::CyclicGraph: return "CyclicGraph";
    case ErrorKind::InexactInput: return "InexactInput";
    case ErrorKind::NotCoequalising: return "NotCoequalising";
    case ErrorKind::NotCoequifying: return "NotCoequifying";
    case ErrorKind::InvalidCocone: return "InvalidCocone";
    case ErrorKind::InvalidLabel: return "InvalidLabel";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Outcome of a law check. A failing verdict names the first violated law
/// and carries a human-readable witness built from element labels.
struct Verdict {
  bool ok = true;
  std::string law;
  std::string witness;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string law, std::string witness) {
    return {false, std::move(law), std::move(witness)};
  }

  explicit operator bool() const noexcept { return ok; }

  std::string describe() const {
    if (ok) return "ok";
    return law + ": " + witness;
  }
};

}  // namespace intercat
