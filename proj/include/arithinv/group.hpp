#pragma once

#include <string>
#include <vector>

#include "arithinv/matrix.hpp"
#include "arithinv/polynomial.hpp"

namespace arithinv {

inline constexpr int kDefaultClosureCap = 20000;

struct GroupElement {
  ExactMatrix matrix;
  ExactMatrix inverse;  // cached, matrix * inverse == identity exactly
};

/// Finite multiplicatively closed set of invertible n x n matrices.
/// elements()[0] is the identity; the remaining order is deterministic
/// (BFS layers from the identity, matrix-lex within a layer).
class MatrixGroup {
 public:
  MatrixGroup(RingDescriptor ring, int n, std::vector<GroupElement> elements,
              std::vector<int> generator_indices, std::string name = "");

  const RingDescriptor& ring() const noexcept { return ring_; }
  int dimension() const noexcept { return n_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  const GroupElement& identity_element() const { return elements_.front(); }

  /// The validated input generators, as positions in elements().
  const std::vector<int>& generator_indices() const noexcept { return generator_indices_; }
  std::vector<const GroupElement*> generator_elements() const;

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

 private:
  RingDescriptor ring_;
  int n_;
  std::vector<GroupElement> elements_;
  std::vector<int> generator_indices_;
  std::string name_;
};

/// Closure of `generators` (plus the identity) under multiplication.
/// Throws NotInvertibleOverRing for a non-unit determinant and
/// CapExceeded when the closure grows past `cap`.
MatrixGroup close_group(const RingDescriptor& ring, int n,
                        const std::vector<ExactMatrix>& generators,
                        int cap = kDefaultClosureCap);

/// Full product-table audit: every a*b is again in the set.
bool audit_closure(const MatrixGroup& g);

/// The paper's action sigma(f) = f(sigma^{-1} x): a left action, each
/// act(g, .) a ring automorphism.
Polynomial act(const GroupElement& g, const Polynomial& f);

/// Entrywise reduction of a Z-group followed by re-closure and
/// re-validation; the order may drop.
MatrixGroup reduce_mod_p(const MatrixGroup& g, const mpz_class& p);

/// Base change of the matrices (Z -> Q promotion and the like), re-closed.
MatrixGroup change_ring(const MatrixGroup& g, const RingDescriptor& target);

}  // namespace arithinv
