#ifndef PMG_MATRIX_MARKET_HPP
#define PMG_MATRIX_MARKET_HPP

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pmg/linalg.hpp"

namespace pmg {

/// Coordinate-format Matrix Market export, 1-based indices, %.17g values.
inline void write_matrix_market(std::ostream& os, const CsrMatrix& a) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << a.n_rows << " " << a.n_cols << " " << a.nnz() << "\n";
  char buf[64];
  for (index_t r = 0; r < a.n_rows; ++r) {
    for (index_t p = a.row_offsets[r]; p < a.row_offsets[r + 1]; ++p) {
      std::snprintf(buf, sizeof(buf), "%zu %zu %.17g\n", r + 1,
                    static_cast<std::size_t>(a.col_indices[p] + 1), a.values[p]);
      os << buf;
    }
  }
}

inline CsrMatrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw std::runtime_error("matrix market: missing banner");
  if (line.find("coordinate") == std::string::npos ||
      line.find("real") == std::string::npos)
    throw std::runtime_error("matrix market: only 'coordinate real' is supported");
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream head(line);
  index_t nr = 0, nc = 0, nz = 0;
  if (!(head >> nr >> nc >> nz))
    throw std::runtime_error("matrix market: bad size line");
  std::vector<Triplet> t;
  t.reserve(nz);
  for (index_t i = 0; i < nz; ++i) {
    index_t r = 0, c = 0;
    double v = 0.0;
    if (!(is >> r >> c >> v))
      throw std::runtime_error("matrix market: truncated entry list");
    if (r == 0 || c == 0 || r > nr || c > nc)
      throw std::runtime_error("matrix market: entry index out of range");
    t.push_back({r - 1, c - 1, v});
  }
  return CsrMatrix::from_triplets(nr, nc, std::move(t));
}

}  // namespace pmg

#endif
