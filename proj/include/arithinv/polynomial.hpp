#pragma once

#include <map>
#include <string>
#include <vector>

#include "arithinv/matrix.hpp"
#include "arithinv/ring.hpp"

namespace arithinv {

/// Exponent vector with cached total degree.
struct Monomial {
  std::vector<int> exponents;
  int degree = 0;

  Monomial() = default;
  explicit Monomial(std::vector<int> e);
  static Monomial one(int n_vars) { return Monomial(std::vector<int>(n_vars, 0)); }

  int n_vars() const { return static_cast<int>(exponents.size()); }
  bool operator==(const Monomial& o) const { return exponents == o.exponents; }

  std::string to_string() const;  // "x1^2*x2", "1" for the empty monomial
};

/// Graded lexicographic: degree first, then lex on exponents.
bool grlex_less(const Monomial& a, const Monomial& b);

/// Term maps iterate in descending graded-lex, the canonical printing order.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

/// Sparse multivariate polynomial over one coefficient ring. No zero
/// coefficients are stored.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, mpq_class, GrlexDescending>;

  Polynomial(RingDescriptor ring, int n_vars);
  static Polynomial variable(const RingDescriptor& ring, int n_vars, int index);
  static Polynomial constant(const RingDescriptor& ring, int n_vars, const mpq_class& c);
  static Polynomial monomial_term(const RingDescriptor& ring, const Monomial& m,
                                  const mpq_class& c);

  const RingDescriptor& ring() const noexcept { return ring_; }
  int n_vars() const noexcept { return n_vars_; }
  const TermMap& terms() const noexcept { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;

  Scalar coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const mpq_class& c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const mpq_class& c) const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Canonical text: terms in descending graded-lex, '^' for powers,
  /// explicit '*', e.g. "2*x1^2*x2 - x3".
  std::string to_string() const;
  static Polynomial parse(const RingDescriptor& ring, int n_vars, const std::string& text);

  Polynomial to_ring(const RingDescriptor& target) const;

 private:
  RingDescriptor ring_;
  int n_vars_;
  TermMap terms_;
};

/// All monomials of one degree, in descending graded-lex order.
struct DegreeComponent {
  int n_vars = 0;
  int degree = 0;
  std::vector<Monomial> basis;

  int size() const { return static_cast<int>(basis.size()); }
  int index_of(const Monomial& m) const;  // -1 if absent
};

DegreeComponent monomial_basis(int n_vars, int degree);

/// Substitutes x_i -> (m * x)_i and expands. Homogeneous degree is preserved.
Polynomial substitute_linear(const Polynomial& f, const ExactMatrix& m);

/// Matrix of f -> f(m x) on the degree-d monomial basis; column j holds the
/// coordinates of the image of basis[j]. Composition satisfies
/// action_matrix(a*b, d) == action_matrix(b, d) * action_matrix(a, d).
ExactMatrix action_matrix(const ExactMatrix& m, int degree);

/// Coordinate vector of a homogeneous polynomial over the component basis.
std::vector<mpq_class> coordinates(const Polynomial& f, const DegreeComponent& comp);
Polynomial from_coordinates(const RingDescriptor& ring, const DegreeComponent& comp,
                            const std::vector<mpq_class>& coords);

/// Columns of `vectors` read as polynomials of the component's degree.
std::vector<Polynomial> columns_as_polynomials(const ExactMatrix& vectors,
                                               const DegreeComponent& comp);

}  // namespace arithinv
