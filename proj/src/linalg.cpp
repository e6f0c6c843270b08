#include "hgc/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace hgc {

void vec_axpy(SparseVec& y, const Rat& a, const SparseVec& x) {
  if (a == 0) return;
  for (const auto& [c, v] : x) {
    auto it = y.find(c);
    if (it == y.end()) {
      Rat nv = a * v;
      if (nv != 0) y.emplace(c, std::move(nv));
    } else {
      it->second += a * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

bool vec_is_zero(const SparseVec& v) { return v.empty(); }

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

void SparseMatrix::check(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("matrix index out of bounds");
}

long SparseMatrix::nnz() const {
  long n = 0;
  for (const auto& row : data_) n += static_cast<long>(row.size());
  return n;
}

void SparseMatrix::set(int r, int c, const Rat& v) {
  check(r, c);
  if (v == 0)
    data_[r].erase(c);
  else
    data_[r][c] = v;
}

void SparseMatrix::add(int r, int c, const Rat& v) {
  check(r, c);
  auto it = data_[r].find(c);
  if (it == data_[r].end()) {
    if (v != 0) data_[r][c] = v;
  } else {
    it->second += v;
    if (it->second == 0) data_[r].erase(it);
  }
}

Rat SparseMatrix::get(int r, int c) const {
  check(r, c);
  auto it = data_[r].find(c);
  return it == data_[r].end() ? Rat(0) : it->second;
}

void SparseMatrix::set_row(int r, SparseVec v) {
  if (r < 0 || r >= rows_) throw std::out_of_range("matrix row out of bounds");
  data_[r] = std::move(v);
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) t.data_[c][r] = v;
  return t;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix product shape mismatch");
  SparseMatrix out(rows_, other.cols_);
  for (int r = 0; r < rows_; ++r) {
    SparseVec acc;
    for (const auto& [k, v] : data_[r]) vec_axpy(acc, v, other.data_[k]);
    out.data_[r] = std::move(acc);
  }
  return out;
}

bool SparseMatrix::is_zero() const {
  for (const auto& row : data_)
    if (!row.empty()) return false;
  return true;
}

namespace {

// Integer sparse row for the fraction-free elimination.
using IRow = std::vector<std::pair<int, Int>>;

void irow_reduce_content(IRow& row) {
  if (row.empty()) return;
  Int g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

long rank(const SparseMatrix& m) {
  // Scale each row to a primitive integer vector; rank is unchanged.
  std::vector<IRow> rows;
  rows.reserve(m.rows());
  for (int r = 0; r < m.rows(); ++r) {
    const auto& src = m.row(r);
    if (src.empty()) continue;
    Int l = 1;
    for (const auto& [c, v] : src) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), denominator(v).get_mpz_t());
    IRow row;
    row.reserve(src.size());
    for (const auto& [c, v] : src) {
      Int scaled = numerator(v) * (l / denominator(v));
      row.emplace_back(c, std::move(scaled));
    }
    irow_reduce_content(row);
    rows.push_back(std::move(row));
  }

  long rk = 0;
  std::vector<bool> done(rows.size(), false);
  std::vector<int> col_count(m.cols(), 0);
  while (true) {
    // Markowitz-flavoured pivot: rarest column, then shortest row.
    std::fill(col_count.begin(), col_count.end(), 0);
    bool any = false;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (done[i] || rows[i].empty()) continue;
      any = true;
      for (const auto& [c, v] : rows[i]) ++col_count[c];
    }
    if (!any) break;
    int best_row = -1, best_col = -1;
    long best_score = -1;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (done[i] || rows[i].empty()) continue;
      for (const auto& [c, v] : rows[i]) {
        long score = static_cast<long>(col_count[c] - 1) * static_cast<long>(rows[i].size() - 1);
        if (best_score < 0 || score < best_score) {
          best_score = score;
          best_row = static_cast<int>(i);
          best_col = c;
        }
      }
    }

    IRow piv = rows[best_row];
    done[best_row] = true;
    rows[best_row].clear();
    ++rk;
    Int pv = 0;
    for (const auto& [c, v] : piv)
      if (c == best_col) pv = v;

    for (size_t i = 0; i < rows.size(); ++i) {
      if (done[i] || rows[i].empty()) continue;
      Int rv = 0;
      for (const auto& [c, v] : rows[i])
        if (c == best_col) rv = v;
      if (rv == 0) continue;
      // row_i <- pv*row_i - rv*piv, then strip the gcd to control growth.
      IRow combined;
      combined.reserve(rows[i].size() + piv.size());
      auto ia = rows[i].begin(), ea = rows[i].end();
      auto ib = piv.begin(), eb = piv.end();
      while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->first < ib->first)) {
          combined.emplace_back(ia->first, pv * ia->second);
          ++ia;
        } else if (ia == ea || ib->first < ia->first) {
          combined.emplace_back(ib->first, -rv * ib->second);
          ++ib;
        } else {
          Int v = pv * ia->second - rv * ib->second;
          if (v != 0) combined.emplace_back(ia->first, std::move(v));
          ++ia;
          ++ib;
        }
      }
      irow_reduce_content(combined);
      rows[i] = std::move(combined);
    }
  }
  return rk;
}

long homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  if (d_out.cols() != d_in.rows())
    throw std::invalid_argument("homology_dim: boundary maps are not composable");
  if (!d_out.multiply(d_in).is_zero())
    throw std::domain_error("homology_dim: not a complex (d_out * d_in != 0)");
  return static_cast<long>(d_out.cols()) - rank(d_out) - rank(d_in);
}

std::optional<int> Echelon::insert(const SparseVec& v) {
  SparseVec combo;
  SparseVec red = reduce(v, track_ ? &combo : nullptr);
  int id = n_inserted_++;
  if (red.empty()) {
    last_combo_ = std::move(combo);
    return std::nullopt;
  }
  // Normalize so the pivot entry is 1.
  Rat piv = red.begin()->second;
  SparseVec row;
  for (auto& [c, val] : red) row[c] = val / piv;
  SparseVec self;
  if (track_) {
    for (auto& [i, cf] : combo) self[i] = -cf / piv;
    self[id] = Rat(1) / piv;
  }
  int pivot_col = row.begin()->first;
  // Back-substitute into existing rows to keep the basis reduced.
  for (size_t i = 0; i < rows_.size(); ++i) {
    auto it = rows_[i].find(pivot_col);
    if (it == rows_[i].end()) continue;
    Rat f = it->second;
    vec_axpy(rows_[i], -f, row);
    if (track_) vec_axpy(combos_[i], -f, self);
  }
  pivot_row_[pivot_col] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(row));
  if (track_) combos_.push_back(std::move(self));
  return id;
}

SparseVec Echelon::reduce(const SparseVec& v, SparseVec* combo) const {
  // Each stored row holds exactly one pivot column (the basis is kept fully
  // reduced), so eliminating the pivot columns present in v never introduces
  // new ones and a single pass suffices.
  SparseVec red = v;
  SparseVec acc;
  std::vector<int> pcols;
  for (const auto& [c, val] : red)
    if (pivot_row_.count(c)) pcols.push_back(c);
  for (int c : pcols) {
    auto it = red.find(c);
    if (it == red.end()) continue;
    Rat f = it->second;
    const int r = pivot_row_.at(c);
    vec_axpy(red, -f, rows_[r]);
    if (combo && track_) vec_axpy(acc, f, combos_[r]);
  }
  if (combo) *combo = std::move(acc);
  return red;
}

bool Echelon::contains(const SparseVec& v) const { return reduce(v).empty(); }

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  // Feed the columns into a tracked echelon; every dependent column yields a
  // kernel vector from its reduction coefficients.
  Echelon ech(true);
  SparseMatrix t = m.transpose();  // rows of t are columns of m
  std::vector<SparseVec> kernel;
  for (int c = 0; c < m.cols(); ++c) {
    auto idx = ech.insert(t.row(c));
    if (!idx) {
      SparseVec k = ech.last_combination();
      for (auto& [i, cf] : k) cf = -cf;
      k[c] = 1;
      kernel.push_back(std::move(k));
    }
  }
  return kernel;
}

}  // namespace hgc
