#include "torofree/finite_algebra.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace torofree {

std::string to_string(Family f) { return f == Family::A ? "A" : "C"; }

Family parse_family(std::string_view text) {
  if (text == "A") return Family::A;
  if (text == "C") return Family::C;
  if (text == "B" || text == "D" || text == "E" || text == "F" || text == "G") {
    throw DomainError("type " + std::string(text) +
                      " has no rank-one Cartan-free modules: the simple Lie algebra must be of type "
                      "A_l (l >= 1) or C_l (l >= 2)");
  }
  throw ParseError("unknown Lie type '" + std::string(text) + "'");
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix c(a.size);
  for (int i = 0; i < a.size; ++i) {
    for (int k = 0; k < a.size; ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < a.size; ++j) {
        if (b(k, j) != 0) c(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix c = a;
  for (std::size_t k = 0; k < c.entries.size(); ++k) c.entries[k] += b.entries[k];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix c = a;
  for (std::size_t k = 0; k < c.entries.size(); ++k) c.entries[k] -= b.entries[k];
  return c;
}

Matrix operator*(const Rational& c, Matrix a) {
  for (auto& e : a.entries) e *= c;
  return a;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Rational trace(const Matrix& a) {
  Rational t;
  for (int i = 0; i < a.size; ++i) t += a(i, i);
  return t;
}

namespace {

Matrix unit(int n, int r, int c) {
  Matrix m(n);
  m(r, c) = 1;
  return m;
}

// Ratio c with a == c*b, assuming a is proportional to b and b != 0.
std::optional<Rational> proportion(const Matrix& a, const Matrix& b) {
  std::optional<Rational> c;
  for (std::size_t k = 0; k < a.entries.size(); ++k) {
    if (b.entries[k] == 0) {
      if (a.entries[k] != 0) return std::nullopt;
      continue;
    }
    Rational q = a.entries[k] / b.entries[k];
    if (c && *c != q) return std::nullopt;
    c = q;
  }
  return c;
}

std::string root_name(const std::vector<int>& root) {
  bool negative = std::any_of(root.begin(), root.end(), [](int c) { return c < 0; });
  int height = 0;
  int simple = -1;
  for (std::size_t i = 0; i < root.size(); ++i) {
    height += std::abs(root[i]);
    if (root[i] != 0) simple = static_cast<int>(i);
  }
  std::string head = negative ? "y" : "x";
  if (height == 1) return head + std::to_string(simple + 1);
  std::string out = head + "[";
  for (std::size_t i = 0; i < root.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(std::abs(root[i]));
  }
  return out + "]";
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(Family family, int rank) : family_(family), rank_(rank) {
  if (family == Family::A && rank < 1) throw StructuralError("type A needs rank >= 1");
  if (family == Family::C && rank < 2) throw StructuralError("type C needs rank >= 2");
  if (rank > kMaxRank) throw StructuralError("rank too large");
  size_ = family == Family::A ? rank + 1 : 2 * rank;
  build_basis();
  build_decomposer();
  build_tables();
  build_words();
}

void FiniteAlgebra::build_basis() {
  const int l = rank_, N = size_;
  // Cartan part: fundamental coweights.
  for (int i = 1; i <= l; ++i) {
    Matrix h(N);
    if (family_ == Family::A) {
      Rational shift = frac(i, l + 1);
      for (int p = 0; p < N; ++p) h(p, p) = (p < i ? Rational(1) : Rational(0)) - shift;
    } else {
      for (int p = 0; p < l; ++p) {
        Rational t = i < l ? Rational(p < i ? 1 : 0) : Rational(1, 2);
        h(p, p) = t;
        h(l + p, l + p) = -t;
      }
    }
    basis_.push_back(h);
  }

  std::vector<Matrix> roots;
  if (family_ == Family::A) {
    for (int p = 0; p < N; ++p)
      for (int q = 0; q < N; ++q)
        if (p != q) roots.push_back(unit(N, p, q));
  } else {
    for (int i = 0; i < l; ++i) {
      for (int j = 0; j < l; ++j) {
        if (i != j) roots.push_back(unit(N, i, j) - unit(N, l + j, l + i));
        if (i < j) {
          roots.push_back(unit(N, i, l + j) + unit(N, j, l + i));
          roots.push_back(unit(N, l + i, j) + unit(N, l + j, i));
        }
      }
      roots.push_back(unit(N, i, l + i));
      roots.push_back(unit(N, l + i, i));
    }
  }

  // Root coordinates from the adjoint action of the H basis.
  struct Entry {
    Matrix m;
    std::vector<int> root;
  };
  std::vector<Entry> entries;
  for (auto& e : roots) {
    std::vector<int> coords(l);
    for (int i = 0; i < l; ++i) {
      auto c = proportion(commutator(basis_[i], e), e);
      if (!c || !is_integer(*c)) throw std::logic_error("root vector is not an H-eigenvector");
      coords[i] = static_cast<int>(c->get_num().get_si());
    }
    entries.push_back({e, coords});
  }
  auto key = [](const std::vector<int>& r) {
    int h = 0;
    for (int c : r) h += c;
    return std::make_tuple(h < 0, std::abs(h), r);
  };
  std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
    auto ka = key(a.root), kb = key(b.root);
    if (std::get<0>(ka) != std::get<0>(kb)) return !std::get<0>(ka);
    if (std::get<1>(ka) != std::get<1>(kb)) return std::get<1>(ka) < std::get<1>(kb);
    // Negative roots sorted by the coordinates of their negatives.
    std::vector<int> ra = a.root, rb = b.root;
    if (std::get<0>(ka)) {
      for (auto& c : ra) c = -c;
      for (auto& c : rb) c = -c;
    }
    return ra > rb;
  });

  roots_.assign(l, std::vector<int>(l, 0));
  for (int i = 1; i <= l; ++i) names_.push_back("H" + std::to_string(i));
  chevalley_x_.assign(l, -1);
  chevalley_y_.assign(l, -1);
  for (auto& e : entries) {
    int idx = static_cast<int>(basis_.size());
    basis_.push_back(e.m);
    roots_.push_back(e.root);
    names_.push_back(root_name(e.root));
    int height = 0, simple = -1;
    for (int i = 0; i < l; ++i) {
      height += e.root[i];
      if (e.root[i] != 0) simple = i;
    }
    if (height == 1) chevalley_x_[simple] = idx;
    if (height == -1) chevalley_y_[simple] = idx;
  }
}

void FiniteAlgebra::build_decomposer() {
  const int dim = static_cast<int>(basis_.size());
  const int cols = size_ * size_;
  std::vector<std::vector<Rational>> rows(dim);
  transform_.assign(dim, std::vector<Rational>(dim));
  for (int m = 0; m < dim; ++m) {
    rows[m] = basis_[m].entries;
    transform_[m][m] = 1;
  }
  int r = 0;
  for (int c = 0; c < cols && r < dim; ++c) {
    int piv = -1;
    for (int k = r; k < dim; ++k) {
      if (rows[k][c] != 0) {
        piv = k;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    std::swap(transform_[r], transform_[piv]);
    Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (auto& v : transform_[r]) v *= inv;
    for (int k = 0; k < dim; ++k) {
      if (k == r || rows[k][c] == 0) continue;
      Rational f = rows[k][c];
      for (int j = 0; j < cols; ++j) rows[k][j] -= f * rows[r][j];
      for (int j = 0; j < dim; ++j) transform_[k][j] -= f * transform_[r][j];
    }
    pivots_.push_back(c);
    ++r;
  }
  if (r != dim) throw std::logic_error("basis matrices are linearly dependent");
}

std::vector<Rational> FiniteAlgebra::decompose(const Matrix& mtx) const {
  const int dim = static_cast<int>(basis_.size());
  std::vector<Rational> coeffs(dim);
  for (int k = 0; k < dim; ++k) {
    const Rational& v = mtx.entries[pivots_[k]];
    if (v == 0) continue;
    for (int m = 0; m < dim; ++m)
      if (transform_[k][m] != 0) coeffs[m] += v * transform_[k][m];
  }
  Matrix back(size_);
  for (int m = 0; m < dim; ++m) {
    if (coeffs[m] == 0) continue;
    for (std::size_t k = 0; k < back.entries.size(); ++k) back.entries[k] += coeffs[m] * basis_[m].entries[k];
  }
  if (!(back == mtx)) throw DomainError("matrix is not in the span of the basis");
  return coeffs;
}

void FiniteAlgebra::build_tables() {
  const int d = dim();
  brackets_.assign(static_cast<std::size_t>(d) * d, {});
  forms_.assign(static_cast<std::size_t>(d) * d, Rational(0));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      forms_[a * d + b] = trace(basis_[a] * basis_[b]);
      if (b < a) {
        SparseVec neg = brackets_[b * d + a];
        for (auto& [k, c] : neg) c = -c;
        brackets_[a * d + b] = std::move(neg);
        continue;
      }
      auto coeffs = decompose(commutator(basis_[a], basis_[b]));
      SparseVec sv;
      for (int k = 0; k < d; ++k)
        if (coeffs[k] != 0) sv.emplace_back(k, coeffs[k]);
      brackets_[a * d + b] = std::move(sv);
    }
  }
  for (int i = 1; i <= rank_; ++i) {
    auto coeffs = decompose(commutator(basis_[x(i)], basis_[y(i)]));
    std::vector<Rational> h(coeffs.begin(), coeffs.begin() + rank_);
    for (int k = rank_; k < d; ++k)
      if (coeffs[k] != 0) throw std::logic_error("[x_i, y_i] is not in the Cartan subalgebra");
    if (h[i - 1] != 2) throw std::logic_error("Chevalley normalization failed");
    coroots_.push_back(std::move(h));
  }
}

int FiniteAlgebra::cartan_matrix(int i, int j) const {
  return static_cast<int>(coroots_[i - 1][j - 1].get_num().get_si());
}

Matrix FiniteAlgebra::evaluate(const GeneratorWord& w) const {
  if (w.letters.empty()) throw DomainError("empty generator word");
  Matrix acc = basis_[w.letters.back()];
  for (auto it = w.letters.rbegin() + 1; it != w.letters.rend(); ++it) acc = commutator(basis_[*it], acc);
  return w.scalar * acc;
}

void FiniteAlgebra::build_words() {
  const int d = dim();
  words_.assign(d, {});
  std::map<std::vector<int>, int> by_root;
  for (int m = rank_; m < d; ++m) by_root[roots_[m]] = m;
  for (int m = 0; m < d; ++m) {
    int height = std::accumulate(roots_[m].begin(), roots_[m].end(), 0);
    if (m < rank_ || std::abs(height) == 1) {
      words_[m] = {{m}, Rational(1)};
      continue;
    }
    // Basis is sorted by height, so shorter words already exist.
    const int sign = height > 0 ? 1 : -1;
    bool done = false;
    for (int i = 1; i <= rank_ && !done; ++i) {
      std::vector<int> rest = roots_[m];
      rest[i - 1] -= sign;
      auto it = by_root.find(rest);
      if (it == by_root.end()) continue;
      GeneratorWord w;
      w.letters.push_back(sign > 0 ? x(i) : y(i));
      const auto& inner = words_[it->second].letters;
      w.letters.insert(w.letters.end(), inner.begin(), inner.end());
      auto c = proportion(evaluate(w), basis_[m]);
      if (!c || *c == 0) continue;
      w.scalar = 1 / *c;
      words_[m] = std::move(w);
      done = true;
    }
    if (!done) throw std::logic_error("no generator word for " + names_[m]);
  }
}

std::optional<int> FiniteAlgebra::find(std::string_view name) const {
  for (int m = 0; m < dim(); ++m)
    if (names_[m] == name) return m;
  return std::nullopt;
}

const FiniteAlgebra& finite_algebra(Family family, int rank) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<FiniteAlgebra>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{static_cast<int>(family), rank}];
  if (!slot) slot = std::make_unique<FiniteAlgebra>(family, rank);
  return *slot;
}

}  // namespace torofree
