#pragma once

// Matrix realizations of sl_{l+1} (type A_l) and sp_{2l} (type C_l) in a
// Chevalley-adapted basis. The Cartan part uses the basis H_1..H_l dual to the
// simple roots, so [H_i, x_j] = delta_ij x_j and [H_i, y_j] = -delta_ij y_j.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torofree/core.hpp"

namespace torofree {

enum class Family { A, C };

inline constexpr int kMaxRank = 8;

std::string to_string(Family f);
/// Accepts "A".."G"; types other than A and C are rejected with a diagnostic,
/// since rank-one Cartan-free modules exist only for A_l (l >= 1) and C_l (l >= 2).
Family parse_family(std::string_view text);

/// Dense square matrix over Q.
struct Matrix {
  int size = 0;
  std::vector<Rational> entries;

  explicit Matrix(int n = 0) : size(n), entries(static_cast<std::size_t>(n) * n) {}
  Rational& operator()(int r, int c) { return entries[static_cast<std::size_t>(r) * size + c]; }
  const Rational& operator()(int r, int c) const { return entries[static_cast<std::size_t>(r) * size + c]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Rational& c, Matrix a);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;
};

Matrix commutator(const Matrix& a, const Matrix& b);
Rational trace(const Matrix& a);

/// Nested commutator [g0, [g1, ... [g_{k-1}, g_k]]] of Chevalley generators,
/// with basis element = scalar * word.
struct GeneratorWord {
  std::vector<int> letters;  // basis indices of x_i / y_i, outermost first
  Rational scalar = 1;
};

using SparseVec = std::vector<std::pair<int, Rational>>;

class FiniteAlgebra {
 public:
  FiniteAlgebra(Family family, int rank);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int matrix_size() const { return size_; }

  const Matrix& matrix(int m) const { return basis_[m]; }
  bool is_cartan(int m) const { return m < rank_; }
  /// Basis index of H_i (1-based i).
  int cartan(int i) const { return i - 1; }
  int x(int i) const { return chevalley_x_[i - 1]; }
  int y(int i) const { return chevalley_y_[i - 1]; }
  /// Root of a root vector in simple-root coordinates (zero vector for Cartan).
  const std::vector<int>& root(int m) const { return roots_[m]; }
  const std::string& name(int m) const { return names_[m]; }
  std::optional<int> find(std::string_view name) const;

  /// Structure constants: [b_m1, b_m2] = sum c_k b_k.
  const SparseVec& bracket(int m1, int m2) const { return brackets_[m1 * dim() + m2]; }
  /// Trace form of the defining representation.
  const Rational& form(int m1, int m2) const { return forms_[m1 * dim() + m2]; }
  /// Coroot h_i in the H basis (row i of the Cartan matrix).
  const std::vector<Rational>& coroot(int i) const { return coroots_[i - 1]; }
  /// Cartan matrix entry <alpha_j, alpha_i^vee> = alpha_j(h_i).
  int cartan_matrix(int i, int j) const;

  const GeneratorWord& word(int m) const { return words_[m]; }
  Matrix evaluate(const GeneratorWord& w) const;
  /// Coordinates of a matrix in this basis; throws if it is not in the span.
  std::vector<Rational> decompose(const Matrix& mtx) const;

 private:
  void build_basis();
  void build_decomposer();
  void build_tables();
  void build_words();

  Family family_;
  int rank_;
  int size_;
  std::vector<Matrix> basis_;
  std::vector<std::vector<int>> roots_;
  std::vector<std::string> names_;
  std::vector<int> chevalley_x_, chevalley_y_;
  std::vector<SparseVec> brackets_;
  std::vector<Rational> forms_;
  std::vector<std::vector<Rational>> coroots_;
  std::vector<GeneratorWord> words_;
  // Row-reduced basis data for decompose().
  std::vector<int> pivots_;
  std::vector<std::vector<Rational>> transform_;
};

/// Shared immutable instance per (family, rank); safe to call concurrently.
const FiniteAlgebra& finite_algebra(Family family, int rank);

}  // namespace torofree
