#include "lavrentiev/matrix_market.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lavrentiev/format.hpp"

namespace lavrentiev {

void write_matrix_market(std::ostream& out, const SparseMatrix& a, bool symmetric) {
  if (symmetric) {
    const SparseMatrix diff = SparseMatrix(a.transpose()) - a;
    if (diff.rows() != diff.cols() || diff.norm() != 0.0) {
      throw std::invalid_argument("matrix market: matrix is not symmetric");
    }
  }
  std::vector<Triplet> entries;
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
      if (symmetric && it.row() < it.col()) continue;
      entries.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    }
  }
  out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general")
      << '\n'
      << a.rows() << ' ' << a.cols() << ' ' << entries.size() << '\n';
  for (const auto& e : entries) {
    out << e.row() + 1 << ' ' << e.col() + 1 << ' ' << format_roundtrip(e.value()) << '\n';
  }
}

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("matrix market: empty input");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate" ||
      field != "real" || (symmetry != "general" && symmetry != "symmetric")) {
    throw std::runtime_error("matrix market: unsupported header '" + line + "'");
  }
  const bool symmetric = symmetry == "symmetric";
  while (std::getline(in, line) && !line.empty() && line[0] == '%') {
  }
  long rows = 0, cols = 0, nnz = 0;
  if (!(std::istringstream(line) >> rows >> cols >> nnz)) {
    throw std::runtime_error("matrix market: bad size line");
  }
  std::vector<Triplet> entries;
  entries.reserve(symmetric ? 2 * nnz : nnz);
  for (long k = 0; k < nnz; ++k) {
    long i = 0, j = 0;
    std::string value;
    if (!(in >> i >> j >> value)) throw std::runtime_error("matrix market: truncated entries");
    if (i < 1 || j < 1 || i > rows || j > cols) {
      throw std::runtime_error("matrix market: index out of range");
    }
    const double x = parse_real(value);
    entries.emplace_back(i - 1, j - 1, x);
    if (symmetric && i != j) entries.emplace_back(j - 1, i - 1, x);
  }
  SparseMatrix a(rows, cols);
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();
  return a;
}

void write_vector_market(std::ostream& out, const Vector& v) {
  out << "%%MatrixMarket matrix array real general\n" << v.size() << " 1\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) out << format_roundtrip(v[i]) << '\n';
}

}  // namespace lavrentiev
