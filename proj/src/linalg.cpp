#include "afrel/linalg.hpp"

#include <string>

namespace afrel {

SparseVectorQ::SparseVectorQ(uint32_t dim, LinComb<uint32_t> e) : entries(std::move(e)), dimension(dim) {
  if (!entries.empty() && entries.terms().back().first >= dimension) {
    throw std::out_of_range("SparseVectorQ: index " + std::to_string(entries.terms().back().first) +
                            " outside dimension " + std::to_string(dimension));
  }
}

SparseVectorQ SparseVectorQ::dense(const std::vector<Rational>& values) {
  std::vector<LinComb<uint32_t>::Term> t;
  for (uint32_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_zero()) t.emplace_back(i, values[i]);
  }
  return SparseVectorQ(static_cast<uint32_t>(values.size()), LinComb<uint32_t>::from_sorted(std::move(t)));
}

SparseMatrixQ::SparseMatrixQ(uint32_t cols, std::vector<SparseVectorQ> r) : rows(std::move(r)), columns(cols) {
  for (const auto& row : rows) {
    if (row.dimension != columns) throw std::invalid_argument("SparseMatrixQ: ragged rows");
  }
}

SparseMatrixQ SparseMatrixQ::dense(const std::vector<std::vector<Rational>>& m) {
  SparseMatrixQ out;
  out.columns = m.empty() ? 0 : static_cast<uint32_t>(m.front().size());
  for (const auto& row : m) out.rows.push_back(SparseVectorQ::dense(row));
  for (const auto& row : out.rows) {
    if (row.dimension != out.columns) throw std::invalid_argument("SparseMatrixQ: ragged rows");
  }
  return out;
}

SparseVectorQ SparseMatrixQ::multiply(const SparseVectorQ& v) const {
  if (v.dimension != columns) throw std::invalid_argument("SparseMatrixQ::multiply: dimension mismatch");
  std::vector<LinComb<uint32_t>::Term> t;
  for (uint32_t i = 0; i < rows.size(); ++i) {
    Rational s(0);
    const auto& a = rows[i].entries.terms();
    const auto& b = v.entries.terms();
    size_t p = 0, q = 0;
    while (p < a.size() && q < b.size()) {
      if (a[p].first < b[q].first) {
        ++p;
      } else if (b[q].first < a[p].first) {
        ++q;
      } else {
        s += a[p].second * b[q].second;
        ++p;
        ++q;
      }
    }
    if (!s.is_zero()) t.emplace_back(i, std::move(s));
  }
  return SparseVectorQ(static_cast<uint32_t>(rows.size()), LinComb<uint32_t>::from_sorted(std::move(t)));
}

std::vector<SparseVectorQ> kernel_basis(const SparseMatrixQ& m) {
  Echelon<uint32_t> ech;
  for (const auto& row : m.rows) ech.insert(row.entries);
  std::vector<LinComb<uint32_t>> rref = ech.rref();
  std::vector<bool> pivot(m.columns, false);
  for (const auto& r : rref) pivot[r.front().first] = true;

  // kernel vector for free column f: e_f - sum_i rref[i][f] e_{pivot_i}
  std::vector<std::vector<LinComb<uint32_t>::Term>> acc(m.columns);
  for (const auto& r : rref) {
    uint32_t p = r.front().first;
    for (const auto& [c, x] : r) {
      if (!pivot[c]) acc[c].emplace_back(p, -x);
    }
  }
  std::vector<SparseVectorQ> out;
  for (uint32_t f = 0; f < m.columns; ++f) {
    if (pivot[f]) continue;
    acc[f].emplace_back(f, Rational(1));
    out.emplace_back(m.columns, LinComb<uint32_t>::from_terms(std::move(acc[f])));
  }
  return out;
}

size_t rank(const SparseMatrixQ& m) {
  Echelon<uint32_t> ech;
  for (const auto& row : m.rows) ech.insert(row.entries);
  return ech.rank();
}

SpanResult in_span(const SparseVectorQ& v, const std::vector<SparseVectorQ>& basis) {
  std::vector<LinComb<uint32_t>> family;
  family.reserve(basis.size());
  for (const auto& b : basis) {
    if (b.dimension != v.dimension) throw std::invalid_argument("in_span: dimension mismatch");
    family.push_back(b.entries);
  }
  SpanSolver<uint32_t> solver(family);
  auto coeffs = solver.solve(v.entries);
  if (!coeffs) return {};
  return {true, std::move(*coeffs)};
}

}  // namespace afrel
