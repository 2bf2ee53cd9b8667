#include "gds/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "gds/error.hpp"

namespace gds {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& text, const char* context) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto* begin = t.data();
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (t.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::ParseError, std::string(context) + ": cannot parse number '" + t + "'");
  }
  return value;
}

// Shortest text that reads back to the same double.
std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string format_complex(Complex z) {
  std::string out = format_double(z.real());
  if (!std::signbit(z.imag())) out += '+';
  out += format_double(z.imag());
  out += 'j';
  return out;
}

Complex parse_complex(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw Error(ErrorCode::ParseError, "empty complex value");
  if (t.back() != 'j' && t.back() != 'i') return {parse_double(t, "complex"), 0.0};
  // Split at the last sign that is not an exponent sign and not leading.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size() - 1; k > 0; --k) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string body = t.substr(0, t.size() - 1);
  if (split == std::string::npos) return {0.0, parse_double(body, "complex")};
  std::string imag = body.substr(split);
  if (imag.front() == '+') imag.erase(0, 1);
  return {parse_double(body.substr(0, split), "complex"), parse_double(imag, "complex")};
}

Graph read_graph_csv(std::istream& in) {
  std::optional<bool> directed;
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const auto pos = t.find("directed=");
      if (pos != std::string::npos) {
        const std::string flag = trim(t.substr(pos + 9));
        if (flag == "true") directed = true;
        else if (flag == "false") directed = false;
        else throw Error(ErrorCode::ParseError, "bad directed flag '" + flag + "'");
      }
      continue;
    }
    std::vector<double> row;
    for (const auto& cell : split_csv(t)) row.push_back(parse_double(cell, "adjacency CSV"));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, "adjacency CSV has no rows");
  const auto n = rows.size();
  Matrix w(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::ParseError, "adjacency CSV row " + std::to_string(i + 1) + " has " +
                                             std::to_string(rows[i].size()) + " entries, expected " +
                                             std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) w(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  }
  const bool is_directed = directed.value_or(w != w.transpose());
  return Graph(std::move(w), is_directed);
}

void write_graph_csv(std::ostream& out, const Graph& graph) {
  out << "# directed=" << (graph.directed() ? "true" : "false") << '\n';
  const auto& w = graph.weights();
  for (Index i = 0; i < w.rows(); ++i) {
    for (Index j = 0; j < w.cols(); ++j) {
      if (j) out << ',';
      out << format_double(w(i, j));
    }
    out << '\n';
  }
}

Graph read_graph_mtx(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "empty Matrix Market file");
  std::istringstream banner(line);
  std::string tag, object, layout, field, symmetry;
  banner >> tag >> object >> layout >> field >> symmetry;
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  if (tag != "%%MatrixMarket" || lower(object) != "matrix" || lower(layout) != "coordinate") {
    throw Error(ErrorCode::ParseError, "expected a '%%MatrixMarket matrix coordinate' banner");
  }
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "real" && field != "integer" && field != "pattern") {
    throw Error(ErrorCode::ParseError, "unsupported Matrix Market field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw Error(ErrorCode::ParseError, "unsupported Matrix Market symmetry '" + symmetry + "'");
  }
  do {
    if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "missing size line");
  } while (trim(line).empty() || trim(line).front() == '%');
  long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> nnz) || rows != cols || rows <= 0 || nnz < 0) {
      throw Error(ErrorCode::ParseError, "size line must describe a non-empty square matrix");
    }
  }
  Matrix w = Matrix::Zero(rows, cols);
  long seen = 0;
  while (seen < nnz && std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    std::istringstream ss(t);
    long i = 0, j = 0;
    double v = 1.0;
    if (!(ss >> i >> j) || (field != "pattern" && !(ss >> v))) {
      throw Error(ErrorCode::ParseError, "bad Matrix Market entry '" + t + "'");
    }
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw Error(ErrorCode::ParseError, "Matrix Market entry out of range: '" + t + "'");
    }
    w(i - 1, j - 1) = v;
    if (symmetry == "symmetric") w(j - 1, i - 1) = v;
    ++seen;
  }
  if (seen != nnz) throw Error(ErrorCode::ParseError, "Matrix Market file ended early");
  return Graph(std::move(w), symmetry != "symmetric");
}

void write_graph_mtx(std::ostream& out, const Graph& graph) {
  const auto& w = graph.weights();
  const bool sym = !graph.directed();
  std::vector<std::tuple<Index, Index, double>> entries;
  for (Index j = 0; j < w.cols(); ++j) {
    for (Index i = sym ? j : 0; i < w.rows(); ++i) {
      if (w(i, j) != 0.0) entries.emplace_back(i, j, w(i, j));
    }
  }
  out << "%%MatrixMarket matrix coordinate real " << (sym ? "symmetric" : "general") << '\n';
  out << w.rows() << ' ' << w.cols() << ' ' << entries.size() << '\n';
  for (const auto& [i, j, v] : entries) out << i + 1 << ' ' << j + 1 << ' ' << format_double(v) << '\n';
}

GraphFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".mtx" ? GraphFormat::MatrixMarket : GraphFormat::Csv;
}

Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  return format_for_path(path) == GraphFormat::MatrixMarket ? read_graph_mtx(in) : read_graph_csv(in);
}

void write_graph(const std::filesystem::path& path, const Graph& graph) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  if (format_for_path(path) == GraphFormat::MatrixMarket) write_graph_mtx(out, graph);
  else write_graph_csv(out, graph);
}

SpatialTable read_spatial_table_csv(std::istream& in) {
  std::string line;
  std::vector<SpatialRecord> rows;
  bool header_seen = false;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cells = split_csv(t);
    if (!header_seen) {
      header_seen = true;
      if (cells.size() < 3 || cells[0] != "id" || cells[1] != "x" || cells[2] != "y") {
        throw Error(ErrorCode::ParseError, "spatial table header must start with id,x,y");
      }
      continue;
    }
    if (cells.size() < 3) throw Error(ErrorCode::ParseError, "spatial table row too short");
    SpatialRecord rec;
    rec.id = cells[0];
    rec.x = parse_double(cells[1], "spatial table x");
    rec.y = parse_double(cells[2], "spatial table y");
    for (std::size_t k = 3; k < cells.size(); ++k) {
      rec.samples.push_back(parse_double(cells[k], "spatial table sample"));
    }
    rows.push_back(std::move(rec));
  }
  if (!header_seen) throw Error(ErrorCode::ParseError, "spatial table is empty");
  return SpatialTable(std::move(rows));
}

void write_spatial_table_csv(std::ostream& out, const SpatialTable& table) {
  out << "id,x,y";
  for (Index k = 0; k < table.sample_count(); ++k) out << ",s" << k + 1;
  out << '\n';
  for (const auto& r : table.rows()) {
    out << r.id << ',' << format_double(r.x) << ',' << format_double(r.y);
    for (double s : r.samples) out << ',' << format_double(s);
    out << '\n';
  }
}

}  // namespace gds
