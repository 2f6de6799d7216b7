#ifndef SRLAB_IO_HPP
#define SRLAB_IO_HPP

#include <iosfwd>
#include <string>

#include "srlab/matrix.hpp"

namespace srlab {

class ParseError : public Error {
 public:
  using Error::Error;
};

// Reads a dense matrix. Files whose first line starts with "%%MatrixMarket"
// are parsed as MatrixMarket array format (real, integer or complex;
// general, symmetric or hermitian); anything else is read as CSV of reals.
Matrix read_matrix(const std::string& path);
Matrix read_matrix_market(std::istream& in);
Matrix read_csv(std::istream& in);

// MatrixMarket array, general symmetry, 17 significant digits so values
// round-trip exactly.
void write_matrix_market(std::ostream& out, const Matrix& a);
void write_matrix_market(const std::string& path, const Matrix& a);

}  // namespace srlab

#endif  // SRLAB_IO_HPP
