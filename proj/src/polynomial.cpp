#include "arithinv/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace arithinv {

Monomial::Monomial(std::vector<int> e) : exponents(std::move(e)) {
  degree = std::accumulate(exponents.begin(), exponents.end(), 0);
}

std::string Monomial::to_string() const {
  std::string out;
  for (int i = 0; i < n_vars(); ++i) {
    if (exponents[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i + 1);
    if (exponents[i] > 1) out += "^" + std::to_string(exponents[i]);
  }
  return out.empty() ? "1" : out;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  return a.exponents < b.exponents;
}

Polynomial::Polynomial(RingDescriptor ring, int n_vars) : ring_(std::move(ring)), n_vars_(n_vars) {
  if (n_vars < 1) fail(ErrorCode::invalid_argument, "polynomial needs at least one variable");
}

Polynomial Polynomial::variable(const RingDescriptor& ring, int n_vars, int index) {
  Polynomial p(ring, n_vars);
  std::vector<int> e(n_vars, 0);
  e.at(index) = 1;
  p.add_term(Monomial(std::move(e)), 1);
  return p;
}

Polynomial Polynomial::constant(const RingDescriptor& ring, int n_vars, const mpq_class& c) {
  Polynomial p(ring, n_vars);
  p.add_term(Monomial::one(n_vars), c);
  return p;
}

Polynomial Polynomial::monomial_term(const RingDescriptor& ring, const Monomial& m,
                                     const mpq_class& c) {
  Polynomial p(ring, m.n_vars());
  p.add_term(m, c);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return terms_.begin()->first.degree;  // descending order: first term is maximal
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.begin()->first.degree;
  for (const auto& [m, c] : terms_)
    if (m.degree != d) return false;
  return true;
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero(ring_) : Scalar(ring_, it->second);
}

void Polynomial::add_term(const Monomial& m, const mpq_class& c) {
  if (m.n_vars() != n_vars_) fail(ErrorCode::dimension_mismatch, "monomial variable count");
  mpq_class v = normalize_value(ring_, c);
  if (v == 0) return;
  auto [it, inserted] = terms_.emplace(m, v);
  if (!inserted) {
    it->second = normalize_value(ring_, it->second + v);
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_ring(ring_, o.ring_, "polynomial add");
  if (n_vars_ != o.n_vars_) fail(ErrorCode::dimension_mismatch, "polynomial add variable counts");
  Polynomial out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
  Polynomial out(ring_, n_vars_);
  for (const auto& [m, c] : terms_) out.add_term(m, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_ring(ring_, o.ring_, "polynomial mul");
  if (n_vars_ != o.n_vars_) fail(ErrorCode::dimension_mismatch, "polynomial mul variable counts");
  Polynomial out(ring_, n_vars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      std::vector<int> e(n_vars_);
      for (int i = 0; i < n_vars_; ++i) e[i] = ma.exponents[i] + mb.exponents[i];
      out.add_term(Monomial(std::move(e)), ca * cb);
    }
  return out;
}

Polynomial Polynomial::scaled(const mpq_class& c) const {
  Polynomial out(ring_, n_vars_);
  for (const auto& [m, v] : terms_) out.add_term(m, v * c);
  return out;
}

bool Polynomial::operator==(const Polynomial& o) const {
  return ring_ == o.ring_ && n_vars_ == o.n_vars_ && terms_ == o.terms_;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = c < 0;
    mpq_class mag = negative ? mpq_class(-c) : c;
    std::string body;
    if (m.degree == 0) {
      body = mag.get_str();
    } else if (mag == 1) {
      body = m.to_string();
    } else {
      body = mag.get_str() + "*" + m.to_string();
    }
    if (first) {
      out = (negative ? "-" : "") + body;
      first = false;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out;
}

namespace {

struct PolyParser {
  const RingDescriptor& ring;
  int n_vars;
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) { ++pos; return true; }
    return false;
  }
  [[noreturn]] void bail(const std::string& msg) {
    fail(ErrorCode::parse_error, msg + " at position " + std::to_string(pos) + " in '" + text + "'");
  }

  mpz_class parse_integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) bail("expected a number");
    return mpz_class(text.substr(start, pos - start));
  }

  // factor := number [ '/' number ] | 'x' index [ '^' exp ]
  void parse_factor(mpq_class& coeff, std::vector<int>& exps) {
    skip_ws();
    if (pos >= text.size()) bail("expected a factor");
    if (text[pos] == 'x') {
      ++pos;
      mpz_class idx = parse_integer();
      if (idx < 1 || idx > n_vars) bail("variable index out of range");
      int exp = 1;
      if (eat('^')) {
        mpz_class e = parse_integer();
        if (e < 0 || e > 1 << 20) bail("bad exponent");
        exp = static_cast<int>(e.get_si());
      }
      exps[idx.get_si() - 1] += exp;
    } else if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      mpz_class num = parse_integer();
      if (eat('/')) {
        mpz_class den = parse_integer();
        if (den == 0) bail("zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        coeff *= q;
      } else {
        coeff *= mpq_class(num);
      }
    } else {
      bail("expected a factor");
    }
  }

  Polynomial parse() {
    Polynomial out(ring, n_vars);
    skip_ws();
    if (pos >= text.size()) bail("empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      if (pos >= text.size()) break;
      int sign = 1;
      if (eat('+')) {
        sign = 1;
      } else if (eat('-')) {
        sign = -1;
      } else if (!first) {
        bail("expected '+' or '-'");
      }
      mpq_class coeff = sign;
      std::vector<int> exps(n_vars, 0);
      parse_factor(coeff, exps);
      while (eat('*')) parse_factor(coeff, exps);
      out.add_term(Monomial(exps), coeff);
      first = false;
    }
    return out;
  }
};

}  // namespace

Polynomial Polynomial::parse(const RingDescriptor& ring, int n_vars, const std::string& text) {
  std::string trimmed = text;
  // "0" parses to the zero polynomial
  PolyParser parser{ring, n_vars, trimmed};
  Polynomial p = parser.parse();
  return p;
}

Polynomial Polynomial::to_ring(const RingDescriptor& target) const {
  Polynomial out(target, n_vars_);
  for (const auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

int DegreeComponent::index_of(const Monomial& m) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), m,
                             [](const Monomial& a, const Monomial& b) { return grlex_less(b, a); });
  if (it == basis.end() || !(*it == m)) return -1;
  return static_cast<int>(it - basis.begin());
}

DegreeComponent monomial_basis(int n_vars, int degree) {
  if (n_vars < 1) fail(ErrorCode::invalid_argument, "monomial_basis needs n_vars >= 1");
  if (degree < 0) fail(ErrorCode::invalid_argument, "monomial_basis needs degree >= 0");
  DegreeComponent comp{n_vars, degree, {}};
  std::vector<int> e(n_vars, 0);
  // descending lex enumeration of compositions of `degree` into n_vars parts
  e[0] = degree;
  while (true) {
    comp.basis.emplace_back(e);
    // find rightmost position before the last with a positive entry
    int i = n_vars - 2;
    while (i >= 0 && e[i] == 0) --i;
    if (i < 0) break;
    --e[i];
    int tail = e[n_vars - 1] + 1;
    e[n_vars - 1] = 0;
    e[i + 1] = tail;
    for (int j = i + 2; j < n_vars; ++j) {
      e[i + 1] += e[j];
      e[j] = 0;
    }
  }
  return comp;
}

namespace {

// Shared expansion state: the linear images of the variables and their
// memoized powers (orbit products hit the same powers over and over).
struct LinearSubstitution {
  std::vector<std::vector<Polynomial>> powers;  // powers[i][k] = L_i^k

  LinearSubstitution(const ExactMatrix& m, int n_vars) {
    powers.reserve(n_vars);
    for (int i = 0; i < n_vars; ++i) {
      Polynomial li(m.ring(), n_vars);
      for (int j = 0; j < n_vars; ++j) {
        std::vector<int> e(n_vars, 0);
        e[j] = 1;
        li.add_term(Monomial(std::move(e)), m(i, j));
      }
      powers.push_back({Polynomial::constant(m.ring(), n_vars, 1), std::move(li)});
    }
  }

  const Polynomial& power(int var, int exp) {
    auto& cache = powers[var];
    while (static_cast<int>(cache.size()) <= exp) cache.push_back(cache.back() * cache[1]);
    return cache[exp];
  }

  Polynomial apply(const Polynomial& f) {
    Polynomial out(f.ring(), f.n_vars());
    for (const auto& [m, c] : f.terms()) {
      Polynomial term = Polynomial::constant(f.ring(), f.n_vars(), c);
      for (int i = 0; i < f.n_vars(); ++i)
        if (m.exponents[i] > 0) term = term * power(i, m.exponents[i]);
      out = out + term;
    }
    return out;
  }
};

}  // namespace

Polynomial substitute_linear(const Polynomial& f, const ExactMatrix& m) {
  require_same_ring(f.ring(), m.ring(), "substitute_linear");
  if (m.rows() != f.n_vars() || m.cols() != f.n_vars())
    fail(ErrorCode::dimension_mismatch, "substitution matrix must be n_vars x n_vars");
  LinearSubstitution sub(m, f.n_vars());
  return sub.apply(f);
}

ExactMatrix action_matrix(const ExactMatrix& m, int degree) {
  if (!m.is_square()) fail(ErrorCode::dimension_mismatch, "action_matrix needs a square matrix");
  if (degree < 0) fail(ErrorCode::invalid_argument, "action_matrix needs degree >= 0");
  const int n = m.rows();
  DegreeComponent comp = monomial_basis(n, degree);
  LinearSubstitution sub(m, n);
  ExactMatrix out(m.ring(), comp.size(), comp.size());
  for (int j = 0; j < comp.size(); ++j) {
    Polynomial image = sub.apply(Polynomial::monomial_term(m.ring(), comp.basis[j], 1));
    for (const auto& [mono, c] : image.terms()) {
      int i = comp.index_of(mono);
      if (i < 0) fail(ErrorCode::verification_failed, "substitution left the degree component");
      out.set(i, j, c);
    }
  }
  return out;
}

std::vector<mpq_class> coordinates(const Polynomial& f, const DegreeComponent& comp) {
  std::vector<mpq_class> out(comp.size(), mpq_class(0));
  for (const auto& [m, c] : f.terms()) {
    int i = comp.index_of(m);
    if (i < 0)
      fail(ErrorCode::not_homogeneous,
           "polynomial has a term outside the degree-" + std::to_string(comp.degree) + " component");
    out[i] = c;
  }
  return out;
}

Polynomial from_coordinates(const RingDescriptor& ring, const DegreeComponent& comp,
                            const std::vector<mpq_class>& coords) {
  if (static_cast<int>(coords.size()) != comp.size())
    fail(ErrorCode::dimension_mismatch, "coordinate vector length");
  Polynomial out(ring, comp.n_vars);
  for (int i = 0; i < comp.size(); ++i) out.add_term(comp.basis[i], coords[i]);
  return out;
}

std::vector<Polynomial> columns_as_polynomials(const ExactMatrix& vectors,
                                               const DegreeComponent& comp) {
  if (vectors.rows() != comp.size())
    fail(ErrorCode::dimension_mismatch, "vector length vs component size");
  std::vector<Polynomial> out;
  out.reserve(vectors.cols());
  for (int j = 0; j < vectors.cols(); ++j) {
    Polynomial p(vectors.ring(), comp.n_vars);
    for (int i = 0; i < comp.size(); ++i) p.add_term(comp.basis[i], vectors(i, j));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace arithinv
