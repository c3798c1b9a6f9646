#include <algorithm>
#include <cmath>
#include <ctime>

#include "slepian/io.hpp"

namespace slepian::io {

namespace {

constexpr int width = 480;
constexpr int height = 360;
constexpr int margin = 40;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

std::string header(const plot_options& opt) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
                  std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " +
                  std::to_string(height) + "\">\n";
  if (opt.timestamp) {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    s += "<!-- generated " + std::string(buf) + " -->\n";
  }
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty())
    s += "<text x=\"" + std::to_string(width / 2) + "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" + escape(opt.title) + "</text>\n";
  return s;
}

// Diverging map: -1 blue (33,102,172), 0 white, +1 red (178,24,43).
std::string diverging(double t) {
  t = std::clamp(t, -1.0, 1.0);
  const double lo[3] = {33, 102, 172}, hi[3] = {178, 24, 43};
  const double* end = t < 0 ? lo : hi;
  const double a = std::abs(t);
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(255 + (end[0] - 255) * a)),
                static_cast<int>(std::lround(255 + (end[1] - 255) * a)),
                static_cast<int>(std::lround(255 + (end[2] - 255) * a)));
  return buf;
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
  std::string s = "<polyline fill=\"none\" " + style + " points=\"";
  for (const auto& [x, y] : pts) s += num(x) + "," + num(y) + " ";
  s += "\"/>\n";
  return s;
}

std::string line_plot(const grid& g, const cvec& v, std::span<const double> mask, const plot_options& opt) {
  std::string s = header(opt);
  const double plot_w = width - 2 * margin, plot_h = height - 2 * margin;
  double top = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) top = std::max({top, std::abs(v(i).real()), std::abs(v(i).imag())});
  if (top == 0.0) top = 1.0;
  double mask_top = 0.0;
  for (double m : mask) mask_top = std::max(mask_top, std::abs(m));
  auto px = [&](int k) { return margin + plot_w * (g.space_node(k) + 1.0) / 2.0; };
  auto py = [&](double y) { return margin + plot_h * (1.0 - (y / top + 1.0) / 2.0); };
  s += "<rect x=\"" + num(margin) + "\" y=\"" + num(margin) + "\" width=\"" + num(plot_w) + "\" height=\"" +
       num(plot_h) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  s += "<line x1=\"" + num(margin) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(width - margin) + "\" y2=\"" +
       num(py(0)) + "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
  if (mask_top > 0) {
    std::vector<std::pair<double, double>> m;
    for (int k = 0; k < g.n(); ++k) m.emplace_back(px(k), py(top * mask[k] / mask_top));
    s += polyline(m, "stroke=\"gray\" stroke-width=\"1\"");
  }
  std::vector<std::pair<double, double>> re, im;
  bool complex = false;
  for (int k = 0; k < g.n(); ++k) {
    re.emplace_back(px(k), py(v(k).real()));
    im.emplace_back(px(k), py(v(k).imag()));
    complex = complex || std::abs(v(k).imag()) > 1e-12;
  }
  s += polyline(re, "stroke=\"#b2182b\" stroke-width=\"1.5\"");
  if (complex) s += polyline(im, "stroke=\"#2166ac\" stroke-width=\"1.5\" stroke-dasharray=\"4,3\"");
  s += "<text x=\"" + num(margin) + "\" y=\"" + num(height - 12) + "\" font-family=\"sans-serif\" font-size=\"11\">-1</text>\n";
  s += "<text x=\"" + num(width - margin) + "\" y=\"" + num(height - 12) +
       "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1</text>\n";
  s += "</svg>\n";
  return s;
}

std::string heatmap(const grid& g, const cvec& v, std::span<const double> mask, const plot_options& opt) {
  std::string s = header(opt);
  const int n = g.n();
  const double side = std::min(width, height) - 2.0 * margin;
  const double cell = side / n;
  const double x0 = (width - side) / 2.0, y0 = margin;
  double top = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) top = std::max(top, std::abs(v(i).real()));
  if (top == 0.0) top = 1.0;
  // row i is the first axis, drawn bottom to top; column j is the second axis
  auto cx = [&](int j) { return x0 + cell * j; };
  auto cy = [&](int i) { return y0 + cell * (n - 1 - i); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s += "<rect x=\"" + num(cx(j)) + "\" y=\"" + num(cy(i)) + "\" width=\"" + num(cell + 0.05) + "\" height=\"" +
           num(cell + 0.05) + "\" fill=\"" + diverging(v(static_cast<Eigen::Index>(i) * n + j).real() / top) +
           "\"/>\n";
  auto in = [&](int i, int j) { return i >= 0 && j >= 0 && i < n && j < n && mask[static_cast<std::size_t>(i) * n + j] > 0; };
  std::string path;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!in(i, j)) continue;
      if (!in(i + 1, j)) path += "M" + num(cx(j)) + " " + num(cy(i)) + "h" + num(cell);
      if (!in(i - 1, j)) path += "M" + num(cx(j)) + " " + num(cy(i) + cell) + "h" + num(cell);
      if (!in(i, j - 1)) path += "M" + num(cx(j)) + " " + num(cy(i)) + "v" + num(cell);
      if (!in(i, j + 1)) path += "M" + num(cx(j) + cell) + " " + num(cy(i)) + "v" + num(cell);
    }
  if (!path.empty()) s += "<path d=\"" + path + "\" fill=\"none\" stroke=\"gray\" stroke-width=\"1\"/>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace

std::string vector_svg(const grid& g, const cvec& v, std::span<const double> mask, const plot_options& opt) {
  if (v.size() != g.space_size() || static_cast<std::int64_t>(mask.size()) != g.space_size())
    throw dimension_error("plot data does not match the grid");
  if (g.dim() == 1) return line_plot(g, v, mask, opt);
  if (g.dim() == 2) return heatmap(g, v, mask, opt);
  throw dimension_error("plots are available for d <= 2 only");
}

std::string spectrum_svg(std::span<const double> values, const plot_options& opt) {
  std::string s = header(opt);
  const double plot_w = width - 2 * margin, plot_h = height - 2 * margin;
  const double floor_exp = -16.0;
  auto py = [&](double v) {
    const double e = std::clamp(std::log10(std::max(v, 1e-16)), floor_exp, 0.5);
    return margin + plot_h * (0.5 - e) / (0.5 - floor_exp);
  };
  const double count = std::max<double>(1.0, static_cast<double>(values.size()) - 1.0);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < values.size(); ++i) pts.emplace_back(margin + plot_w * i / count, py(values[i]));
  s += "<rect x=\"" + num(margin) + "\" y=\"" + num(margin) + "\" width=\"" + num(plot_w) + "\" height=\"" +
       num(plot_h) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  for (int e : {0, -4, -8, -12, -16})
    s += "<text x=\"" + num(margin - 4) + "\" y=\"" + num(py(std::pow(10.0, e)) + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">1e" + std::to_string(e) + "</text>\n";
  s += polyline(pts, "stroke=\"#b2182b\" stroke-width=\"1.5\"");
  s += "</svg>\n";
  return s;
}

}  // namespace slepian::io
