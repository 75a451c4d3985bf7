#pragma once

#include <iosfwd>

#include "lavrentiev/linalg.hpp"

namespace lavrentiev {

/// Coordinate format, 1-based. With `symmetric` only the lower triangle is
/// written under a "real symmetric" header; the matrix must be symmetric.
void write_matrix_market(std::ostream& out, const SparseMatrix& a,
                         bool symmetric);
/// Reads "coordinate real general|symmetric"; symmetric files are expanded.
SparseMatrix read_matrix_market(std::istream& in);

void write_vector_market(std::ostream& out, const Vector& v);

}  // namespace lavrentiev
