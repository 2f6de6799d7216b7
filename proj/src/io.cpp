#include "srlab/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace srlab {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    std::ostringstream msg;
    msg << "line " << line << ": cannot parse number '" << token << "'";
    throw ParseError(msg.str());
  }
  return v;
}

}  // namespace

Matrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty MatrixMarket file");
  ++line_no;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket") throw ParseError("missing %%MatrixMarket banner");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") throw ParseError("unsupported MatrixMarket object '" + object + "'");
  if (format != "array") {
    throw ParseError("unsupported MatrixMarket format '" + format + "' (expected array)");
  }
  const bool is_complex = field == "complex";
  if (!is_complex && field != "real" && field != "integer" && field != "double") {
    throw ParseError("unsupported MatrixMarket field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "hermitian") {
    throw ParseError("unsupported MatrixMarket symmetry '" + symmetry + "'");
  }
  if (symmetry == "hermitian" && !is_complex) {
    throw ParseError("hermitian symmetry requires a complex field");
  }

  std::vector<std::string> tokens;
  Eigen::Index rows = -1, cols = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    std::istringstream ls(t);
    if (rows < 0) {
      std::string r, c, extra;
      ls >> r >> c;
      if (ls >> extra) throw ParseError("array size line must hold exactly two integers");
      rows = static_cast<Eigen::Index>(parse_double(r, line_no));
      cols = static_cast<Eigen::Index>(parse_double(c, line_no));
      if (rows <= 0 || cols <= 0) throw ParseError("matrix dimensions must be positive");
      continue;
    }
    std::string tok;
    while (ls >> tok) {
      parse_double(tok, line_no);
      tokens.push_back(tok);
    }
  }
  if (rows < 0) throw ParseError("missing size line");
  const bool packed = symmetry != "general";
  if (packed && rows != cols) throw ParseError("symmetric matrix must be square");
  const Eigen::Index count = packed ? rows * (rows + 1) / 2 : rows * cols;
  const Eigen::Index per = is_complex ? 2 : 1;
  if (static_cast<Eigen::Index>(tokens.size()) != count * per) {
    std::ostringstream msg;
    msg << "expected " << count * per << " values, found " << tokens.size();
    throw ParseError(msg.str());
  }
  DenseComplex d = DenseComplex::Zero(rows, cols);
  std::size_t k = 0;
  auto next = [&]() {
    const double re = std::stod(tokens[k++]);
    const double im = is_complex ? std::stod(tokens[k++]) : 0.0;
    return Complex(re, im);
  };
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = packed ? j : 0; i < rows; ++i) {
      const Complex z = next();
      d(i, j) = z;
      if (packed && i != j) d(j, i) = symmetry == "hermitian" ? std::conj(z) : z;
    }
  }
  return Matrix(std::move(d), is_complex ? ScalarField::complex : ScalarField::real);
}

Matrix read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<double> row;
    std::istringstream ls(t);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(parse_double(trim(cell), line_no));
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream msg;
      msg << "line " << line_no << ": expected " << rows.front().size() << " columns, found "
          << row.size();
      throw ParseError(msg.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty()) throw ParseError("CSV file holds no values");
  DenseReal d(static_cast<Eigen::Index>(rows.size()),
              static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return Matrix(d);
}

Matrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  const int first = in.peek();
  if (first == '%') return read_matrix_market(in);
  return read_csv(in);
}

void write_matrix_market(std::ostream& out, const Matrix& a) {
  out << "%%MatrixMarket matrix array " << (a.is_real() ? "real" : "complex") << " general\n";
  out << a.rows() << " " << a.cols() << "\n";
  out << std::setprecision(17);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Complex z = a(i, j);
      if (a.is_real()) {
        out << z.real() << "\n";
      } else {
        out << z.real() << " " << z.imag() << "\n";
      }
    }
  }
}

void write_matrix_market(const std::string& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_matrix_market(out, a);
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace srlab
