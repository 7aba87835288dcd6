#include "phom/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace phom {

namespace {

struct Overflow {};

template <typename Int>
struct Arith;

template <>
struct Arith<std::int64_t> {
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t neg(std::int64_t a) {
    if (a == INT64_MIN) throw Overflow{};
    return -a;
  }
  static std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
};

template <>
struct Arith<BigInt> {
  static BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
  static BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
  static BigInt neg(const BigInt& a) { return -a; }
  static BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
};

template <typename Int>
struct Column {
  std::vector<Index> rows;
  std::vector<Int> values;
  bool empty() const { return rows.empty(); }
};

template <typename Int>
class Echelon {
  using A = Arith<Int>;

 public:
  explicit Echelon(Index rows) : pivot_of_row_(static_cast<std::size_t>(rows), -1) {}

  // Returns true when `col` is independent of the columns added so far.
  bool add(Column<Int> col) {
    while (!col.empty()) {
      const Index lead = col.rows.front();
      const auto slot = pivot_of_row_[static_cast<std::size_t>(lead)];
      if (slot < 0) {
        if (col.values.front() < 0)
          for (auto& v : col.values) v = A::neg(v);
        pivot_of_row_[static_cast<std::size_t>(lead)] = static_cast<std::ptrdiff_t>(pivots_.size());
        pivots_.push_back(std::move(col));
        return true;
      }
      col = eliminate(col, pivots_[static_cast<std::size_t>(slot)]);
    }
    return false;
  }

  Index rank() const { return static_cast<Index>(pivots_.size()); }

 private:
  // a*col - b*piv with the shared leading entry cancelled, then divided by the
  // content of the result.
  Column<Int> eliminate(const Column<Int>& col, const Column<Int>& piv) {
    Int a = piv.values.front();
    Int b = col.values.front();
    const Int g = A::gcd(a, b);
    a /= g;
    b /= g;
    Column<Int> out;
    out.rows.reserve(col.rows.size() + piv.rows.size());
    out.values.reserve(col.rows.size() + piv.rows.size());
    std::size_t i = 1, j = 1;
    while (i < col.rows.size() || j < piv.rows.size()) {
      Index r;
      Int v;
      if (j >= piv.rows.size() || (i < col.rows.size() && col.rows[i] < piv.rows[j])) {
        r = col.rows[i];
        v = A::mul(a, col.values[i++]);
      } else if (i >= col.rows.size() || piv.rows[j] < col.rows[i]) {
        r = piv.rows[j];
        v = A::neg(A::mul(b, piv.values[j++]));
      } else {
        r = col.rows[i];
        v = A::sub(A::mul(a, col.values[i++]), A::mul(b, piv.values[j++]));
      }
      if (v != 0) {
        out.rows.push_back(r);
        out.values.push_back(std::move(v));
      }
    }
    if (!out.empty()) {
      Int content = out.values.front() < 0 ? A::neg(out.values.front()) : out.values.front();
      for (std::size_t k = 1; k < out.values.size() && content != 1; ++k) content = A::gcd(content, out.values[k]);
      if (content != 1)
        for (auto& v : out.values) v /= content;
    }
    return out;
  }

  std::vector<std::ptrdiff_t> pivot_of_row_;
  std::vector<Column<Int>> pivots_;
};

template <typename Int>
Column<Int> convert(const IntegerColumn& c);

template <>
Column<std::int64_t> convert(const IntegerColumn& c) {
  Column<std::int64_t> out;
  out.rows = c.rows;
  out.values.reserve(c.values.size());
  for (const auto& v : c.values) {
    // Leave headroom so that the first cross-multiplication rarely overflows.
    if (boost::multiprecision::abs(v) > BigInt(INT64_MAX)) throw Overflow{};
    out.values.push_back(v.convert_to<std::int64_t>());
  }
  return out;
}

template <>
Column<BigInt> convert(const IntegerColumn& c) {
  return Column<BigInt>{c.rows, c.values};
}

template <typename Int>
Index run(Index rows, std::span<const IntegerColumn> columns, std::optional<Index> upper_bound) {
  Echelon<Int> echelon(rows);
  for (const auto& c : columns) {
    if (upper_bound && echelon.rank() >= *upper_bound) break;
    echelon.add(convert<Int>(c));
  }
  return echelon.rank();
}

}  // namespace

Index column_rank(Index rows, std::span<const IntegerColumn> columns, std::optional<Index> upper_bound) {
  for (const auto& c : columns)
    for (const Index r : c.rows)
      if (r < 0 || r >= rows) throw std::out_of_range("column entry outside the row range");
  try {
    return run<std::int64_t>(rows, columns, upper_bound);
  } catch (const Overflow&) {
    return run<BigInt>(rows, columns, upper_bound);
  }
}

IntegerColumn to_integer_column(std::span<const std::pair<Index, Rational>> entries) {
  std::vector<std::pair<Index, Rational>> sorted(entries.begin(), entries.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  BigInt scale = 1;
  for (const auto& [row, x] : sorted) {
    const BigInt d = boost::multiprecision::denominator(x);
    if (d != 1) scale = boost::multiprecision::lcm(scale, d);
  }
  IntegerColumn col;
  col.rows.reserve(sorted.size());
  col.values.reserve(sorted.size());
  for (const auto& [row, x] : sorted) {
    if (x == 0) continue;
    if (!col.rows.empty() && col.rows.back() == row) throw std::invalid_argument("repeated row in column");
    col.rows.push_back(row);
    col.values.push_back(boost::multiprecision::numerator(x) * (scale / boost::multiprecision::denominator(x)));
  }
  return col;
}

RationalMatrix RationalVectorBasis::stacked() const {
  RationalMatrix m(size(), dimension);
  for (Index i = 0; i < size(); ++i) m.row(i) = vectors[static_cast<std::size_t>(i)].transpose();
  return m;
}

RowEchelon row_echelon(RationalMatrix m) {
  RowEchelon out;
  Index pivot_row = 0;
  for (Index col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    Index found = -1;
    for (Index r = pivot_row; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        found = r;
        break;
      }
    if (found < 0) continue;
    if (found != pivot_row) m.row(found).swap(m.row(pivot_row));
    const Rational inv = 1 / m(pivot_row, col);
    for (Index c = col; c < m.cols(); ++c)
      if (m(pivot_row, c) != 0) m(pivot_row, c) *= inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == pivot_row || m(r, col) == 0) continue;
      const Rational factor = m(r, col);
      for (Index c = col; c < m.cols(); ++c)
        if (m(pivot_row, c) != 0) m(r, c) -= factor * m(pivot_row, c);
    }
    out.pivot_columns.push_back(col);
    ++pivot_row;
  }
  out.reduced = std::move(m);
  return out;
}

RationalVectorBasis null_space(const RationalMatrix& m) {
  const RowEchelon ech = row_echelon(m);
  RationalVectorBasis basis;
  basis.dimension = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (const Index c : ech.pivot_columns) is_pivot[static_cast<std::size_t>(c)] = true;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    RationalVector v = RationalVector::Zero(m.cols());
    v(free) = 1;
    for (std::size_t k = 0; k < ech.pivot_columns.size(); ++k)
      v(ech.pivot_columns[k]) = -ech.reduced(static_cast<Index>(k), free);
    basis.vectors.push_back(std::move(v));
  }
  return basis;
}

}  // namespace phom
