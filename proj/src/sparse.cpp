#include "gch/sparse.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gch {

namespace {

// Dense scratch accumulator with a touched list; reused per thread.
struct Scratch {
  std::vector<Rational> val;
  std::vector<char> used;
  std::vector<int> touched;

  void ensure(int n) {
    if (static_cast<int>(val.size()) < n) {
      val.resize(n);
      used.resize(n, 0);
    }
  }
  void add(int c, const Rational& v) {
    if (!used[c]) {
      used[c] = 1;
      touched.push_back(c);
      val[c] = v;
    } else {
      val[c] += v;
    }
  }
  void add_mul(int c, const Rational& a, const Rational& b) {
    if (!used[c]) {
      used[c] = 1;
      touched.push_back(c);
      val[c] = a * b;
    } else {
      val[c].add_mul(a, b);
    }
  }
  SparseRow take() {
    std::sort(touched.begin(), touched.end());
    SparseRow out;
    out.reserve(touched.size());
    for (int c : touched) {
      if (!val[c].is_zero()) out.emplace_back(c, std::move(val[c]));
      val[c] = Rational();
      used[c] = 0;
    }
    touched.clear();
    return out;
  }
};

thread_local Scratch tl_scratch;

void check_row(const SparseRow& row, int ncols) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i].first < 0 || row[i].first >= ncols) throw std::out_of_range("SparseMat: column out of range");
    if (row[i].second.is_zero()) throw std::invalid_argument("SparseMat: stored zero");
    if (i > 0 && row[i - 1].first >= row[i].first) throw std::invalid_argument("SparseMat: unsorted row");
  }
}

}  // namespace

SparseMat::SparseMat(int nrows, int ncols) : nrows_(nrows), ncols_(ncols), rows_(nrows) {
  if (nrows < 0 || ncols < 0) throw std::invalid_argument("SparseMat: negative size");
}

SparseMat SparseMat::from_triplets(int nrows, int ncols, const std::vector<Triplet>& t) {
  SparseMat m(nrows, ncols);
  std::vector<std::map<int, Rational>> acc(nrows);
  for (const auto& e : t) {
    if (e.row < 0 || e.row >= nrows || e.col < 0 || e.col >= ncols)
      throw std::out_of_range("SparseMat::from_triplets: coordinate out of range");
    acc[e.row][e.col] += e.val;
  }
  for (int r = 0; r < nrows; ++r)
    for (auto& [c, v] : acc[r])
      if (!v.is_zero()) m.rows_[r].emplace_back(c, v);
  return m;
}

SparseMat SparseMat::from_dense(const std::vector<std::vector<Rational>>& rows) {
  int nr = static_cast<int>(rows.size());
  int nc = nr ? static_cast<int>(rows[0].size()) : 0;
  SparseMat m(nr, nc);
  for (int r = 0; r < nr; ++r) {
    if (static_cast<int>(rows[r].size()) != nc) throw std::invalid_argument("SparseMat::from_dense: ragged rows");
    for (int c = 0; c < nc; ++c)
      if (!rows[r][c].is_zero()) m.rows_[r].emplace_back(c, rows[r][c]);
  }
  return m;
}

SparseMat SparseMat::identity(int n) {
  SparseMat m(n, n);
  for (int i = 0; i < n; ++i) m.rows_[i].emplace_back(i, Rational(1));
  return m;
}

void SparseMat::set_row(int r, SparseRow row) {
  check_row(row, ncols_);
  rows_.at(r) = std::move(row);
}

Rational SparseMat::at(int r, int c) const {
  const auto& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& p, int col) { return p.first < col; });
  return (it != row.end() && it->first == c) ? it->second : Rational(0);
}

std::size_t SparseMat::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

std::vector<Triplet> SparseMat::entries() const {
  std::vector<Triplet> out;
  for (int r = 0; r < nrows_; ++r)
    for (const auto& [c, v] : rows_[r]) out.push_back({r, c, v});
  return out;
}

SparseMat SparseMat::transpose() const {
  SparseMat t(ncols_, nrows_);
  for (int r = 0; r < nrows_; ++r)
    for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(r, v);
  return t;
}

Column SparseMat::apply(const Column& x) const {
  if (static_cast<int>(x.size()) != ncols_) throw std::invalid_argument("SparseMat::apply: dimension mismatch");
  Column y(nrows_);
  for (int r = 0; r < nrows_; ++r)
    for (const auto& [c, v] : rows_[r]) y[r].add_mul(v, x[c]);
  return y;
}

SparseMat SparseMat::hstack(const SparseMat& o) const {
  if (o.nrows_ != nrows_) throw std::invalid_argument("SparseMat::hstack: row mismatch");
  SparseMat m(nrows_, ncols_ + o.ncols_);
  for (int r = 0; r < nrows_; ++r) {
    m.rows_[r] = rows_[r];
    for (const auto& [c, v] : o.rows_[r]) m.rows_[r].emplace_back(c + ncols_, v);
  }
  return m;
}

SparseMat operator*(const SparseMat& a, const SparseMat& b) {
  if (a.ncols_ != b.nrows_) throw std::invalid_argument("SparseMat: product dimension mismatch");
  SparseMat m(a.nrows_, b.ncols_);
  Scratch& s = tl_scratch;
  s.ensure(b.ncols_);
  for (int r = 0; r < a.nrows_; ++r) {
    for (const auto& [k, v] : a.rows_[r])
      for (const auto& [c, w] : b.rows_[k]) s.add_mul(c, v, w);
    m.rows_[r] = s.take();
  }
  return m;
}

RrefResult rref(const SparseMat& m) {
  std::vector<SparseRow> rows;
  for (int r = 0; r < m.nrows(); ++r) rows.push_back(m.row(r));
  std::vector<int> pivots;
  std::vector<SparseRow> done;  // pivot rows in pivot order
  std::vector<char> alive(rows.size(), 1);
  Scratch& s = tl_scratch;
  s.ensure(m.ncols());
  for (int c = 0; c < m.ncols(); ++c) {
    int pr = -1;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (alive[r] && !rows[r].empty() && rows[r].front().first == c) {
        pr = static_cast<int>(r);
        break;
      }
    if (pr < 0) continue;
    alive[pr] = 0;
    SparseRow piv = std::move(rows[pr]);
    Rational inv = Rational(1) / piv.front().second;
    for (auto& e : piv) e.second *= inv;
    auto eliminate = [&](SparseRow& row) {
      auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& p, int col) { return p.first < col; });
      if (it == row.end() || it->first != c) return;
      Rational f = -it->second;
      for (const auto& [cc, v] : row) s.add(cc, v);
      for (const auto& [cc, v] : piv) s.add_mul(cc, f, v);
      row = s.take();
    };
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (alive[r]) eliminate(rows[r]);
    for (auto& row : done) eliminate(row);
    done.push_back(std::move(piv));
    pivots.push_back(c);
  }
  SparseMat out(m.nrows(), m.ncols());
  for (std::size_t i = 0; i < done.size(); ++i) out.set_row(static_cast<int>(i), std::move(done[i]));
  return {std::move(out), std::move(pivots)};
}

int rank(const SparseMat& m) {
  RowReducer red(m.ncols());
  for (int r = 0; r < m.nrows(); ++r) red.insert(m.row(r));
  return red.rank();
}

std::optional<Column> solve_in_column_span(const SparseMat& m, const Column& b) {
  if (static_cast<int>(b.size()) != m.nrows())
    throw std::invalid_argument("solve_in_column_span: dimension mismatch");
  const int rhs = m.ncols();
  RowReducer red(m.ncols() + 1);
  for (int r = 0; r < m.nrows(); ++r) {
    SparseRow row = m.row(r);
    if (!b[r].is_zero()) row.emplace_back(rhs, b[r]);
    SparseRow red_row = red.reduce(row);
    if (red_row.empty()) continue;
    if (red_row.front().first == rhs) return std::nullopt;  // 0 = nonzero
    red.insert(row);
  }
  Column x(m.ncols());
  for (const auto& [p, row] : red.pivot_rows())
    if (!row.empty() && row.back().first == rhs) x[p] = row.back().second;
  return x;
}

std::vector<Column> kernel_basis(const SparseMat& m) {
  RrefResult rr = rref(m);
  std::vector<char> is_pivot(m.ncols(), 0);
  for (int p : rr.pivots) is_pivot[p] = 1;
  std::vector<Column> basis;
  for (int f = 0; f < m.ncols(); ++f) {
    if (is_pivot[f]) continue;
    Column v(m.ncols());
    v[f] = 1;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = -rr.reduced.at(static_cast<int>(i), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

RowReducer::RowReducer(int ncols) : ncols_(ncols), pivot_of_col_(ncols, -1) {}

SparseRow RowReducer::reduce(const SparseRow& row) const {
  Scratch& s = tl_scratch;
  s.ensure(ncols_);
  for (const auto& [c, v] : row) {
    if (c < 0 || c >= ncols_) throw std::out_of_range("RowReducer: column out of range");
    s.add(c, v);
  }
  for (const auto& [c, v] : row) {
    int p = pivot_of_col_[c];
    if (p < 0) continue;
    Rational f = -v;
    for (const auto& [cc, w] : pivots_[p]) s.add_mul(cc, f, w);
  }
  return s.take();
}

bool RowReducer::insert(const SparseRow& row) {
  SparseRow r = reduce(row);
  if (r.empty()) return false;
  Rational inv = Rational(1) / r.front().second;
  for (auto& e : r) e.second *= inv;
  int c = r.front().first;
  Scratch& s = tl_scratch;
  for (auto& prow : pivots_) {
    auto it = std::lower_bound(prow.begin(), prow.end(), c, [](const auto& p, int col) { return p.first < col; });
    if (it == prow.end() || it->first != c) continue;
    Rational f = -it->second;
    for (const auto& [cc, v] : prow) s.add(cc, v);
    for (const auto& [cc, v] : r) s.add_mul(cc, f, v);
    prow = s.take();
  }
  pivot_of_col_[c] = static_cast<int>(pivots_.size());
  pivot_cols_.push_back(c);
  pivots_.push_back(std::move(r));
  return true;
}

std::vector<std::pair<int, SparseRow>> RowReducer::pivot_rows() const {
  std::vector<std::pair<int, SparseRow>> out;
  for (std::size_t i = 0; i < pivots_.size(); ++i) out.emplace_back(pivot_cols_[i], pivots_[i]);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::string to_matrix_market(const SparseMat& m) {
  std::ostringstream os;
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << "% exact rational entries written as p/q\n";
  os << m.nrows() << " " << m.ncols() << " " << m.nnz() << "\n";
  for (const auto& t : m.entries()) os << (t.row + 1) << " " << (t.col + 1) << " " << t.val.str() << "\n";
  return os.str();
}

SparseMat from_matrix_market(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int nr = -1, nc = -1;
  long nnz = 0;
  std::vector<Triplet> t;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    if (nr < 0) {
      ls >> nr >> nc >> nnz;
      if (!ls) throw std::invalid_argument("from_matrix_market: bad size line");
      continue;
    }
    int r, c;
    std::string v;
    ls >> r >> c >> v;
    if (!ls) throw std::invalid_argument("from_matrix_market: bad entry line");
    t.push_back({r - 1, c - 1, Rational::parse(v)});
  }
  if (nr < 0) throw std::invalid_argument("from_matrix_market: missing size line");
  if (static_cast<long>(t.size()) != nnz) throw std::invalid_argument("from_matrix_market: entry count mismatch");
  return SparseMat::from_triplets(nr, nc, t);
}

std::string to_json_triplets(const SparseMat& m) {
  std::ostringstream os;
  os << "{\"nrows\":" << m.nrows() << ",\"ncols\":" << m.ncols() << ",\"entries\":[";
  bool first = true;
  for (const auto& t : m.entries()) {
    os << (first ? "" : ",") << "[" << t.row << "," << t.col << ",\"" << t.val.str() << "\"]";
    first = false;
  }
  os << "]}";
  return os.str();
}

}  // namespace gch
