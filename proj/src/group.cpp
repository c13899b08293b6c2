#include "arithinv/group.hpp"

#include <map>
#include <utility>

namespace arithinv {

MatrixGroup::MatrixGroup(RingDescriptor ring, int n, std::vector<GroupElement> elements,
                         std::vector<int> generator_indices, std::string name)
    : ring_(std::move(ring)), n_(n), elements_(std::move(elements)),
      generator_indices_(std::move(generator_indices)), name_(std::move(name)) {}

std::vector<const GroupElement*> MatrixGroup::generator_elements() const {
  std::vector<const GroupElement*> out;
  out.reserve(generator_indices_.size());
  for (int i : generator_indices_) out.push_back(&elements_[i]);
  return out;
}

namespace {

void validate_generator(const RingDescriptor& ring, int n, const ExactMatrix& g) {
  require_same_ring(ring, g.ring(), "group generator");
  if (g.rows() != n || g.cols() != n)
    fail(ErrorCode::dimension_mismatch, "group generator must be n x n");
  mpq_class det = determinant(g);
  if (ring.kind() == RingKind::integers) {
    if (det != 1 && det != -1)
      fail(ErrorCode::not_invertible_over_ring,
           "determinant " + det.get_str() + " is not a unit of Z");
  } else if (det == 0) {
    fail(ErrorCode::not_invertible_over_ring, "generator is singular");
  }
}

}  // namespace

MatrixGroup close_group(const RingDescriptor& ring, int n,
                        const std::vector<ExactMatrix>& generators, int cap) {
  if (cap < 1) fail(ErrorCode::invalid_argument, "closure cap must be >= 1");
  for (const ExactMatrix& g : generators) validate_generator(ring, n, g);

  ExactMatrix id = ExactMatrix::identity(ring, n);
  std::vector<ExactMatrix> elements{id};
  std::map<ExactMatrix, int, MatrixLess> index{{id, 0}};

  // BFS layers from the identity; within a layer, matrix-lex order.
  std::vector<ExactMatrix> frontier{id};
  while (!frontier.empty()) {
    std::map<ExactMatrix, int, MatrixLess> layer;
    for (const ExactMatrix& e : frontier)
      for (const ExactMatrix& g : generators) {
        ExactMatrix p = e * g;
        if (!index.count(p)) layer.emplace(std::move(p), 0);
      }
    frontier.clear();
    for (auto& [m, unused] : layer) {
      (void)unused;
      if (static_cast<int>(elements.size()) >= cap)
        fail(ErrorCode::cap_exceeded,
             "closure exceeded cap " + std::to_string(cap) + "; the group may be infinite");
      index.emplace(m, static_cast<int>(elements.size()));
      elements.push_back(m);
      frontier.push_back(m);
    }
  }

  std::vector<GroupElement> with_inverses;
  with_inverses.reserve(elements.size());
  for (const ExactMatrix& m : elements) with_inverses.push_back({m, inverse(m)});

  std::vector<int> generator_indices;
  generator_indices.reserve(generators.size());
  for (const ExactMatrix& g : generators) generator_indices.push_back(index.at(g));

  return MatrixGroup(ring, n, std::move(with_inverses), std::move(generator_indices));
}

bool audit_closure(const MatrixGroup& g) {
  std::map<ExactMatrix, int, MatrixLess> index;
  for (int i = 0; i < g.order(); ++i) {
    if (index.count(g.elements()[i].matrix)) return false;  // duplicate element
    index.emplace(g.elements()[i].matrix, i);
  }
  if (!g.elements().front().matrix.is_identity()) return false;
  for (const GroupElement& a : g.elements()) {
    if (!(a.matrix * a.inverse).is_identity()) return false;
    if (!index.count(a.inverse)) return false;
    for (const GroupElement& b : g.elements())
      if (!index.count(a.matrix * b.matrix)) return false;
  }
  return true;
}

Polynomial act(const GroupElement& g, const Polynomial& f) {
  return substitute_linear(f, g.inverse);
}

MatrixGroup reduce_mod_p(const MatrixGroup& g, const mpz_class& p) {
  if (g.ring().kind() != RingKind::integers)
    fail(ErrorCode::ring_mismatch, "reduce_mod_p needs a Z group");
  RingDescriptor fp = RingDescriptor::prime_field(p);
  std::vector<ExactMatrix> reduced;
  reduced.reserve(g.generator_indices().size());
  for (const GroupElement* e : g.generator_elements()) reduced.push_back(e->matrix.to_ring(fp));
  MatrixGroup out = close_group(fp, g.dimension(), reduced);
  out.set_name(g.name().empty() ? "" : g.name() + " mod " + p.get_str());
  return out;
}

MatrixGroup change_ring(const MatrixGroup& g, const RingDescriptor& target) {
  if (target == g.ring()) return g;
  std::vector<ExactMatrix> converted;
  converted.reserve(g.generator_indices().size());
  for (const GroupElement* e : g.generator_elements()) converted.push_back(e->matrix.to_ring(target));
  MatrixGroup out = close_group(target, g.dimension(), converted);
  out.set_name(g.name());
  return out;
}

}  // namespace arithinv
