#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "slepian/io.hpp"

namespace slepian::io {

namespace {

bool has_imaginary(const cvec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i).imag()) > 1e-12) return true;
  return false;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

double parse_number(const std::string& s, const std::filesystem::path& path) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw io_error(path.string() + ": bad number '" + s + "'");
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string vector_csv(const grid& g, int index, double eigenvalue, const cvec& v) {
  if (v.size() != g.space_size()) throw dimension_error("vector does not match the grid");
  if (g.dim() > 2) throw dimension_error("CSV grids are written for d <= 2 only");
  const bool complex = has_imaginary(v);
  std::string out = "# d=" + std::to_string(g.dim()) + " N=" + std::to_string(g.n()) +
                    " index=" + std::to_string(index) + " eigenvalue=" + format_number(eigenvalue) + "\n";
  auto cell = [&](Eigen::Index i) {
    return complex ? format_number(v(i).real()) + "," + format_number(v(i).imag()) : format_number(v(i).real());
  };
  const int per_row = g.dim() == 1 ? 1 : g.n();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out += cell(i);
    out += (i + 1) % per_row == 0 ? "\n" : ",";
  }
  return out;
}

void write_vector_csv(const std::filesystem::path& path, const grid& g, int index, double eigenvalue, const cvec& v) {
  write_text(path, vector_csv(g, index, eigenvalue, v));
}

vector_record read_vector_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw io_error(path.string() + ": missing header");
  vector_record r;
  bool have_d = false, have_n = false;
  for (const auto& field : split(line.substr(2), ' ')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
    if (key == "d") r.dim = std::stoi(val), have_d = true;
    else if (key == "N") r.n = std::stoi(val), have_n = true;
    else if (key == "index") r.index = std::stoi(val);
    else if (key == "eigenvalue") r.eigenvalue = parse_number(val, path);
  }
  if (!have_d || !have_n) throw io_error(path.string() + ": header lacks d or N");
  std::vector<double> nums;
  while (std::getline(in, line))
    if (!line.empty())
      for (const auto& c : split(line, ',')) nums.push_back(parse_number(c, path));
  const std::int64_t size = grid(r.dim, r.n).space_size();
  r.values.resize(size);
  if (static_cast<std::int64_t>(nums.size()) == size) {
    for (std::int64_t i = 0; i < size; ++i) r.values(i) = nums[i];
  } else if (static_cast<std::int64_t>(nums.size()) == 2 * size) {
    for (std::int64_t i = 0; i < size; ++i) r.values(i) = cplx(nums[2 * i], nums[2 * i + 1]);
  } else {
    throw io_error(path.string() + ": expected " + std::to_string(size) + " values, found " +
                   std::to_string(nums.size()));
  }
  return r;
}

void write_spectrum_csv(const std::filesystem::path& path, std::span<const double> values) {
  std::string out = "index,eigenvalue\n";
  for (std::size_t i = 0; i < values.size(); ++i) out += std::to_string(i + 1) + "," + format_number(values[i]) + "\n";
  write_text(path, out);
}

std::vector<double> read_spectrum_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::getline(in, line);
  std::vector<double> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 2) throw io_error(path.string() + ": expected index,eigenvalue");
    out.push_back(parse_number(cells[1], path));
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error(path.string() + ": cannot open for writing: " + std::strerror(errno));
  out << text;
  if (!out) throw io_error(path.string() + ": write failed: " + std::strerror(errno));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path.string() + ": cannot open: " + std::strerror(errno));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace slepian::io
