#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hgc/rational.hpp"

namespace hgc {

// Sparse vector over Q, indexed by column.
using SparseVec = std::map<int, Rat>;

void vec_axpy(SparseVec& y, const Rat& a, const SparseVec& x);  // y += a*x
bool vec_is_zero(const SparseVec& v);

// Sparse matrix over Q. Row-major; no explicit zeros are stored.
class SparseMatrix {
 public:
  SparseMatrix() : rows_(0), cols_(0) {}
  SparseMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long nnz() const;

  void set(int r, int c, const Rat& v);
  void add(int r, int c, const Rat& v);
  Rat get(int r, int c) const;
  const SparseVec& row(int r) const { return data_[r]; }
  void set_row(int r, SparseVec v);

  SparseMatrix transpose() const;
  SparseMatrix multiply(const SparseMatrix& other) const;
  bool is_zero() const;

 private:
  int rows_, cols_;
  std::vector<SparseVec> data_;
  void check(int r, int c) const;
};

// Rank over Q, exact. Fraction-free elimination on integer-scaled rows with
// Markowitz-style pivoting on sparsity.
long rank(const SparseMatrix& m);

// dim ker(d_out) - rank(d_in) for one slice of a chain complex. d_out maps
// degree-k chains down, d_in maps degree-(k+1) chains in; the chain space has
// dimension cols(d_out) = rows(d_in). Throws if the dimensions do not match
// ("not composable") or if d_out * d_in != 0 ("not a complex").
long homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out);

// Incremental reduced row echelon over Q with optional combination tracking.
// Supports rank, kernel extraction, solving and coordinate queries on the
// small exact systems the rest of the library produces.
class Echelon {
 public:
  explicit Echelon(bool track = false) : track_(track) {}

  // Inserts a vector; returns its index if it enlarged the span, nullopt if
  // it was dependent. When tracking, the reduction coefficients of dependent
  // vectors are available through last_combination().
  std::optional<int> insert(const SparseVec& v);

  // Reduces v against the current span; returns the residual. When tracking,
  // fills combo with coefficients c_i such that v = sum c_i * inserted_i +
  // residual (only over vectors that were independent at insert time).
  SparseVec reduce(const SparseVec& v, SparseVec* combo = nullptr) const;

  bool contains(const SparseVec& v) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  const SparseVec& last_combination() const { return last_combo_; }

 private:
  bool track_;
  std::vector<SparseVec> rows_;    // reduced echelon rows
  std::vector<SparseVec> combos_;  // expression of each row in inserted vecs
  std::map<int, int> pivot_row_;   // pivot column -> row index
  SparseVec last_combo_;
  int n_inserted_ = 0;
};

// Basis of the column kernel of m (vectors of length cols(m)).
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);

}  // namespace hgc
