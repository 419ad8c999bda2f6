#include "tvgf/csv.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace tvgf::csv {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

std::string format_full(double v) {
  // shortest decimal form that parses back to the same double
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string format_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

Eigen::MatrixXd load_matrix(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header_pending) {
      header_pending = false;
      continue;
    }
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      std::size_t used = 0;
      double v = 0.0;
      bool bad = fields[c].empty();
      if (!bad) {
        try {
          v = std::stod(fields[c], &used);
        } catch (const std::exception&) {
          bad = true;
        }
      }
      if (bad || used != fields[c].size() || !std::isfinite(v)) {
        std::ostringstream os;
        os << path << ": invalid numeric value '" << fields[c] << "' at row "
           << rows.size() + 1 << ", column " << c + 1;
        throw std::runtime_error(os.str());
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream os;
      os << path << ": row " << rows.size() + 1 << " has " << row.size()
         << " columns, expected " << rows.front().size();
      throw std::runtime_error(os.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": no data rows");

  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
  return m;
}

void save_matrix(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot create file: " + path);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_full(m(r, c));
    }
    out << '\n';
  }
  if (!out) throw FileError("write failed: " + path);
}

void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot create file: " + path);
  out << "i,j,weight\n";
  const SparseMat& a = g.adjacency();
  for (Eigen::Index r = 0; r < a.outerSize(); ++r)
    for (SparseMat::InnerIterator it(a, r); it; ++it)
      if (it.row() < it.col())
        out << it.row() << ',' << it.col() << ','
            << format_full(it.value()) << '\n';
  if (!out) throw FileError("write failed: " + path);
}

void save_coo(const std::string& path, const SelectionMatrix& m) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot create file: " + path);
  out << m.entries().rows() << ' ' << m.entries().cols() << ' '
      << m.entries().nonZeros() << '\n';
  for (Eigen::Index r = 0; r < m.entries().outerSize(); ++r)
    for (SparseMat::InnerIterator it(m.entries(), r); it; ++it)
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
  if (!out) throw FileError("write failed: " + path);
}

}  // namespace tvgf::csv
