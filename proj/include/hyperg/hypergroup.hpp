#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperg/errors.hpp"
#include "hyperg/tensor.hpp"

namespace hyperg {

struct ValidateOptions {
  double tol = 1e-9;  // axiom residual tolerance; entries in (-tol, 0) are clamped to 0
};

enum class Axiom {
  Negativity,
  RowSum,
  Identity,
  InvolutionSupport,
  InvolutionAntihomomorphism,
  Associativity,
};

const char* axiom_name(Axiom a);

struct AxiomViolation {
  Axiom kind;
  std::array<int, 3> where;  // indices involved; unused slots are -1
  double residual;
};

struct AxiomViolationReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary(std::size_t max_lines = 16) const;
};

class FiniteHypergroup;
struct ValidationResult;
ValidationResult validate(const StructureTensor& tensor, const std::vector<int>& involution,
                          std::string name, const ValidateOptions& opts);

/// A validated finite hypergroup. Element 0 is the identity. Immutable after
/// construction, so instances can be shared freely across threads.
class FiniteHypergroup {
 public:
  int order() const { return tensor_.order; }
  const StructureTensor& tensor() const { return tensor_; }
  double n(int i, int j, int k) const { return tensor_.at(i, j, k); }
  int involution(int x) const { return involution_[x]; }
  const std::vector<int>& involution() const { return involution_; }
  double haar(int x) const { return haar_[x]; }
  const std::vector<double>& haar() const { return haar_; }
  double haar_total() const { return haar_total_; }
  const std::string& name() const { return name_; }

  FiniteHypergroup withName(std::string name) const {
    FiniteHypergroup k = *this;
    k.name_ = std::move(name);
    return k;
  }

 private:
  friend ValidationResult validate(const StructureTensor&, const std::vector<int>&, std::string,
                                   const ValidateOptions&);
  FiniteHypergroup() = default;

  StructureTensor tensor_;
  std::vector<int> involution_;
  std::vector<double> haar_;
  double haar_total_ = 0.0;
  std::string name_;
};

struct ValidationResult {
  std::optional<FiniteHypergroup> hypergroup;
  AxiomViolationReport report;
  bool ok() const { return hypergroup.has_value(); }
};

/// Checks the hypergroup axioms (nonnegativity, row sums, identity, involution
/// support and anti-homomorphism) plus associativity of the convolution, which
/// file-supplied tensors can silently violate. On success the returned value
/// carries precomputed Haar weights w{x} = 1 / (delta_xbar * delta_x){e}.
ValidationResult validate(const StructureTensor& tensor, const std::vector<int>& involution,
                          std::string name = "", const ValidateOptions& opts = {});

/// Same, but throws HyperError(AxiomViolation) carrying the report summary.
FiniteHypergroup validate_or_throw(const StructureTensor& tensor, const std::vector<int>& involution,
                                   std::string name = "", const ValidateOptions& opts = {});

/// Haar weights as a Measure (w{e} = 1; not a probability measure).
Measure haar_measure(const FiniteHypergroup& k);

/// (mu * nu){z} = sum_{i,j} mu{i} nu{j} n[i][j][z].
Measure convolve(const FiniteHypergroup& k, const Measure& mu, const Measure& nu);

std::vector<int> support(const Measure& m, double tol = 1e-9);

/// A*B = union of supp(delta_x * delta_y) over x in A, y in B.
std::vector<int> support_product(const FiniteHypergroup& k, std::span<const int> a,
                                 std::span<const int> b, double tol = 1e-9);

bool is_commutative(const FiniteHypergroup& k, double tol = 1e-9);
bool is_hermitian(const FiniteHypergroup& k);

/// f(x*y) = sum_z f(z) (delta_x * delta_y){z} for a complex function on K.
std::complex<double> eval_translated(const FiniteHypergroup& k,
                                     std::span<const std::complex<double>> f, int x, int y);

}  // namespace hyperg
