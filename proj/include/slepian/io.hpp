#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "slepian/geometry.hpp"
#include "slepian/spectrum.hpp"

namespace slepian::io {

// ---- binary dumps ----
//
// Header of eight little-endian int64: magic, version (1), d, N, kind,
// three reserved zeros. Then the values as little-endian (re, im) doubles.

enum class dump_kind : std::int64_t { kernel = 1, matrix = 2 };

inline constexpr std::int64_t dump_magic = 0x504d55444b4c5353;  // "SSLKDUMP"

struct dump {
  int dim = 1;
  int n = 1;
  dump_kind kind = dump_kind::kernel;
  std::vector<cplx> values;
};

void write_dump(const std::filesystem::path& path, const dump& d);
dump read_dump(const std::filesystem::path& path);

// ---- CSV ----

// Round-trip text for a double (17 significant digits).
std::string format_number(double v);

// `# d=<d> N=<N> index=<q> eigenvalue=<lambda>` then one value per line (1D)
// or N rows of N values (2D). Complex vectors carry (re, im) column pairs
// when some imaginary part exceeds 1e-12.
std::string vector_csv(const grid& g, int index, double eigenvalue, const cvec& v);
void write_vector_csv(const std::filesystem::path& path, const grid& g, int index, double eigenvalue, const cvec& v);

struct vector_record {
  int dim = 1;
  int n = 1;
  int index = 0;
  double eigenvalue = 0.0;
  cvec values;
};
vector_record read_vector_csv(const std::filesystem::path& path);

// `index,eigenvalue`, 1-based.
void write_spectrum_csv(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_spectrum_csv(const std::filesystem::path& path);

// ---- SVG ----

struct plot_options {
  std::string title;
  bool timestamp = true;
};

// 1D: line plot of the real part (imaginary part dashed when present) with
// the mask drawn in gray. 2D: heatmap of the real part on a blue-white-red
// map with the mask boundary in gray.
std::string vector_svg(const grid& g, const cvec& v, std::span<const double> mask, const plot_options& opt);
// Eigenvalues against their index on a log axis.
std::string spectrum_svg(std::span<const double> values, const plot_options& opt);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace slepian::io
