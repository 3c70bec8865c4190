#ifndef BFZETA_ERRORS_HPP
#define BFZETA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bfzeta {

// Domain errors map to CLI exit code 2, parse errors to exit code 3.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("ParseError(line " + std::to_string(line) + "): " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ValidationError : public ParseError {
 public:
  ValidationError(int line, std::string field, const std::string& what)
      : ParseError(line, "ValidationError(" + field + "): " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

#define BFZETA_DOMAIN_ERROR(Name)                                              \
  class Name : public DomainError {                                            \
   public:                                                                     \
    explicit Name(const std::string& what) : DomainError(#Name, what) {}       \
  };

// graded_linalg
BFZETA_DOMAIN_ERROR(SingularBlock)
BFZETA_DOMAIN_ERROR(ShapeMismatch)
BFZETA_DOMAIN_ERROR(MellinDivergence)
BFZETA_DOMAIN_ERROR(QuadratureFailure)
// twisted_complex
BFZETA_DOMAIN_ERROR(NotAComplex)
BFZETA_DOMAIN_ERROR(RelatorViolation)
BFZETA_DOMAIN_ERROR(NotAcyclic)
BFZETA_DOMAIN_ERROR(DegenerateResolution)
BFZETA_DOMAIN_ERROR(NotHyperbolic)
BFZETA_DOMAIN_ERROR(NotUnitary)
// bv_gauge
BFZETA_DOMAIN_ERROR(DegenerateGauge)
BFZETA_DOMAIN_ERROR(DegreeOverflow)
BFZETA_DOMAIN_ERROR(IndefiniteWeight)
// ruelle_zeta
BFZETA_DOMAIN_ERROR(DivergentRegion)
BFZETA_DOMAIN_ERROR(SupportTooWide)

#undef BFZETA_DOMAIN_ERROR

class DegenerateContraction : public DomainError {
 public:
  explicit DegenerateContraction(const std::string& what, int sample = -1, double t = 0.0)
      : DomainError("DegenerateContraction", what), sample_(sample), t_(t) {}
  int sample() const noexcept { return sample_; }
  double t() const noexcept { return t_; }

 private:
  int sample_;
  double t_;
};

}  // namespace bfzeta

#endif  // BFZETA_ERRORS_HPP
