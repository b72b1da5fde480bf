#pragma once

#include <string>
#include <vector>

#include "arbordet/error.hpp"
#include "arbordet/polynomial.hpp"

namespace arbordet {

// ---------------------------------------------------------------------------
// SymbolicMatrix: a square grid of polynomials. A plain matrix is n x n and
// indexed 1..n, matching vertex labels. The extended form carries an extra
// row and column 0 and is indexed 0..n.
// ---------------------------------------------------------------------------

class SymbolicMatrix {
 public:
  SymbolicMatrix() = default;

  static SymbolicMatrix zero(int n) { return SymbolicMatrix(n, false); }
  static SymbolicMatrix extended_zero(int n) { return SymbolicMatrix(n, true); }

  int dim() const { return n_; }
  bool extended() const { return extended_; }

  /// First valid row/column index: 1 for plain matrices, 0 for extended.
  int index_begin() const { return extended_ ? 0 : 1; }

  const Polynomial& at(int i, int j) const { return e_[idx(i, j)]; }
  Polynomial& at(int i, int j) { return e_[idx(i, j)]; }

  bool operator==(const SymbolicMatrix& o) const {
    return n_ == o.n_ && extended_ == o.extended_ && e_ == o.e_;
  }
  bool operator!=(const SymbolicMatrix& o) const { return !(*this == o); }

  /// Row-major text, one row per line, entries separated by " | ".
  std::string str() const {
    std::string s;
    for (int i = index_begin(); i <= n_; ++i) {
      for (int j = index_begin(); j <= n_; ++j) {
        if (j != index_begin()) s += " | ";
        s += at(i, j).str();
      }
      s += '\n';
    }
    return s;
  }

 private:
  SymbolicMatrix(int n, bool extended) : n_(n), extended_(extended) {
    if (n < 1) throw DomainError("matrix dimension must be positive");
    int side = extended ? n + 1 : n;
    e_.assign(static_cast<std::size_t>(side) * side, Polynomial{});
  }

  int idx(int i, int j) const {
    int lo = index_begin();
    if (i < lo || i > n_ || j < lo || j > n_)
      throw DomainError("matrix index (" + std::to_string(i) + ", " +
                        std::to_string(j) + ") out of range");
    int side = extended_ ? n_ + 1 : n_;
    return (i - lo) * side + (j - lo);
  }

  int n_ = 0;
  bool extended_ = false;
  std::vector<Polynomial> e_;
};

/// The fully general n x n matrix over the symbols v_i_j: off-diagonal
/// entries -v_i_j, diagonal entries the full column sums. Every square
/// matrix is an instance of this shape under substitution.
inline SymbolicMatrix symbolic_full_matrix(int n) {
  SymbolicMatrix a = SymbolicMatrix::zero(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Polynomial v = Polynomial::symbol(weight_symbol(i, j).name);
      if (i == j) {
        Polynomial col;
        for (int k = 1; k <= n; ++k)
          col += Polynomial::symbol(weight_symbol(k, j).name);
        a.at(i, j) = col;
      } else {
        a.at(i, j) = -v;
      }
    }
  return a;
}

}  // namespace arbordet
