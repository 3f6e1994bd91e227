#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "v2xsim/error.hpp"
#include "v2xsim/harness.hpp"

namespace v2x {

namespace {

constexpr const char* kHeader = "label,snr_db,blocks,ctrl_err,data_err,ctrl_bler,data_bler";

std::string shortest(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

std::string format_results(const std::vector<BlerCurve>& curves) {
  std::string out = std::string(kHeader) + "\n";
  for (const BlerCurve& c : curves)
    for (const BlerPoint& p : c.points) {
      out += c.label + "," + shortest(p.snr_db) + "," + std::to_string(p.blocks_tx) + "," +
             std::to_string(p.blocks_err_control) + "," + std::to_string(p.blocks_err_data) + "," +
             fixed6(compute_bler(p, BlerKind::Control)) + "," +
             fixed6(compute_bler(p, BlerKind::Data)) + "\n";
    }
  return out;
}

std::vector<BlerCurve> parse_results(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw IoError("results: missing CSV header");
  std::vector<BlerCurve> curves;
  int n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 7) throw IoError("results line " + std::to_string(n) + ": expected 7 fields");
    BlerPoint p;
    auto num = [&](const std::string& s, auto& v) {
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size())
        throw IoError("results line " + std::to_string(n) + ": bad number '" + s + "'");
    };
    num(f[1], p.snr_db);
    num(f[2], p.blocks_tx);
    num(f[3], p.blocks_err_control);
    num(f[4], p.blocks_err_data);
    if (curves.empty() || curves.back().label != f[0]) curves.push_back({f[0], {}});
    curves.back().points.push_back(p);
  }
  return curves;
}

std::string render_svg(const std::vector<BlerCurve>& curves) {
  constexpr double W = 640, H = 440, L = 70, R = 150, T = 30, B = 60;
  constexpr double kFloor = 1e-3;
  double x_min = 1e300, x_max = -1e300;
  for (const auto& c : curves)
    for (const auto& p : c.points) {
      x_min = std::min(x_min, p.snr_db);
      x_max = std::max(x_max, p.snr_db);
    }
  if (!(x_max > x_min)) {
    x_min -= 1.0;
    x_max += 1.0;
  }
  const double y_top = 0.0, y_bottom = std::log10(kFloor);
  auto px = [&](double snr) { return L + (snr - x_min) / (x_max - x_min) * (W - L - R); };
  auto py = [&](double bler) {
    const double v = std::log10(std::max(bler, kFloor));
    return T + (y_top - v) / (y_top - y_bottom) * (H - T - B);
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int e = 0; e >= -3; --e) {
    const double y = py(std::pow(10.0, e));
    s << "<line x1=\"" << L << "\" y1=\"" << y << "\" x2=\"" << W - R << "\" y2=\"" << y
      << "\" stroke=\"#ccc\"/>\n";
    s << "<text x=\"" << L - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  for (const auto& c : curves)
    for (const auto& p : c.points) {
      const double x = px(p.snr_db);
      s << "<text x=\"" << x << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">"
        << shortest(p.snr_db) << "</text>\n";
    }
  s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15
    << "\" text-anchor=\"middle\">SNR [dB]</text>\n";
  s << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 18 " << (T + H - B) / 2
    << ")\" text-anchor=\"middle\">BLER (data)</text>\n";
  s << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
    << H - T - B << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const char* color = colors[i % 6];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& p : curves[i].points)
      s << px(p.snr_db) << "," << py(compute_bler(p, BlerKind::Data)) << " ";
    s << "\"/>\n";
    for (const auto& p : curves[i].points)
      s << "<circle cx=\"" << px(p.snr_db) << "\" cy=\"" << py(compute_bler(p, BlerKind::Data))
        << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    const double ly = T + 16 + 18.0 * static_cast<double>(i);
    s << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << W - R + 30 << "\" y2=\""
      << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << W - R + 35 << "\" y=\"" << ly << "\">" << curves[i].label << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void write_results(const std::vector<BlerCurve>& curves, const std::string& csv_path,
                   const std::optional<std::string>& svg_path) {
  if (curves.empty()) throw DomainError("write_results: no curves");
  write_file(csv_path, format_results(curves));
  if (svg_path) write_file(*svg_path, render_svg(curves));
}

}  // namespace v2x
