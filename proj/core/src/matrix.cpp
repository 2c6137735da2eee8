#include "pml/matrix.hpp"

#include <fstream>
#include <sstream>

namespace pml {

namespace {

double parse_number(const std::string& tok) {
  const auto slash = tok.find('/');
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(tok.substr(0, slash));
      const double den = std::stod(tok.substr(slash + 1));
      if (den == 0) throw InputError("zero denominator in '" + tok + "'");
      return num / den;
    }
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) throw InputError("trailing characters in number '" + tok + "'");
    return v;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("cannot parse number '" + tok + "'");
  }
}

}  // namespace

std::vector<double> parse_csv_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t\r");
    if (b == std::string::npos) throw InputError("empty field in '" + text + "'");
    const auto e = tok.find_last_not_of(" \t\r");
    out.push_back(parse_number(tok.substr(b, e - b + 1)));
  }
  if (out.empty()) throw InputError("no values in '" + text + "'");
  return out;
}

SquareMatrix<double> parse_matrix_text(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(parse_csv_numbers(line));
  }
  if (rows.empty()) throw InputError("empty matrix");
  const int n = static_cast<int>(rows.size());
  SquareMatrix<double> m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw InputError("matrix is not square: row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

SquareMatrix<double> read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix_text(buf.str());
}

}  // namespace pml
