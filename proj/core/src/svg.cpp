#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "perfwall/report.hpp"
#include "perfwall/units.hpp"

namespace perfwall::report {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 95.0;
constexpr double kRight = 95.0;
constexpr double kTop = 55.0;
constexpr double kBottom = 70.0;

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#8c564b",
                                               "#9467bd", "#ff7f0e", "#17becf", "#e377c2",
                                               "#7f7f7f", "#bcbd22"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string coord(double v) { return fmt::format("{:.2f}", v); }

// Maps data values onto a pixel interval.
class Scale {
 public:
  Scale(const AxisSpec& axis, double from, double to) : axis_(axis), from_(from), to_(to) {}

  bool representable(double v) const { return std::isfinite(v) && (!log() || v > 0.0); }

  double operator()(double v) const {
    const double t = (transform(v) - transform(axis_.min)) /
                     (transform(axis_.max) - transform(axis_.min));
    return from_ + t * (to_ - from_);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log()) {
      const int lo = static_cast<int>(std::ceil(std::log10(axis_.min) - 1e-9));
      const int hi = static_cast<int>(std::floor(std::log10(axis_.max) + 1e-9));
      const int stride = std::max(1, (hi - lo + 1 + 9) / 10);
      for (int e = lo; e <= hi; e += stride) out.push_back(std::pow(10.0, e));
      return out;
    }
    const double span = axis_.max - axis_.min;
    const double raw = span / 8.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double f : {1.0, 2.0, 5.0, 10.0}) {
      step = f * mag;
      if (span / step <= 8.0) break;
    }
    for (double v = std::ceil(axis_.min / step) * step; v <= axis_.max + step * 1e-9; v += step)
      out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    return out;
  }

  std::string tick_label(double v) const {
    if (log()) return fmt::format("1e{}", static_cast<int>(std::lround(std::log10(v))));
    return fmt::format("{:g}", v);
  }

 private:
  bool log() const { return axis_.scale == AxisScale::Log10; }
  double transform(double v) const { return log() ? std::log10(v) : v; }

  const AxisSpec& axis_;
  double from_;
  double to_;
};

std::string axis_title(const AxisSpec& a) {
  return a.unit.empty() ? a.label : a.label + " (" + a.unit + ")";
}

// Colour ramp for the heat map (dark blue -> teal -> yellow), t in [0, 1].
std::string ramp(double t) {
  static constexpr std::array<std::array<double, 3>, 5> stops{{{68, 1, 84},
                                                              {59, 82, 139},
                                                              {33, 145, 140},
                                                              {94, 201, 98},
                                                              {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
  const double f = t - static_cast<double>(i);
  std::array<int, 3> rgb{};
  for (std::size_t k = 0; k < 3; ++k)
    rgb[k] = static_cast<int>(std::lround(stops[i][k] + f * (stops[i + 1][k] - stops[i][k])));
  return fmt::format("#{:02x}{:02x}{:02x}", rgb[0], rgb[1], rgb[2]);
}

void marker(std::ostream& out, std::size_t shape, double x, double y, const char* color) {
  const std::string cx = coord(x), cy = coord(y);
  switch (shape % 4) {
    case 0:
      out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"4\" fill=\"" << color
          << "\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
      break;
    case 1:
      out << "<rect x=\"" << coord(x - 4) << "\" y=\"" << coord(y - 4)
          << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\"/>\n";
      break;
    case 2:
      out << "<polygon points=\"" << coord(x) << ',' << coord(y - 5) << ' ' << coord(x - 5) << ','
          << coord(y + 4) << ' ' << coord(x + 5) << ',' << coord(y + 4) << "\" fill=\"none\" stroke=\""
          << color << "\" stroke-width=\"1.5\"/>\n";
      break;
    default:
      out << "<polygon points=\"" << coord(x) << ',' << coord(y - 5) << ' ' << coord(x + 5) << ','
          << cy << ' ' << coord(x) << ',' << coord(y + 5) << ' ' << coord(x - 5) << ',' << cy
          << "\" fill=\"" << color << "\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
  }
}

}  // namespace

void emit_svg(const CurveSet& set, std::ostream& out) {
  set.validate();
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  const Scale sx(set.x_axis, x0, x1);
  const Scale sy(set.y_axis, y0, y1);
  const std::optional<Scale> sy2 =
      set.y2_axis ? std::optional<Scale>(Scale(*set.y2_axis, y0, y1)) : std::nullopt;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<title>" << escape(set.title) << "</title>\n"
      << "<defs><clipPath id=\"plot\"><rect x=\"" << coord(x0) << "\" y=\"" << coord(y1)
      << "\" width=\"" << coord(x1 - x0) << "\" height=\"" << coord(y0 - y1)
      << "\"/></clipPath></defs>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << coord(kWidth / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(set.title) << "</text>\n";

  // Heat map.
  if (set.grid) {
    const auto& g = *set.grid;
    const auto [zmin_it, zmax_it] = std::minmax_element(g.z.begin(), g.z.end());
    const double zmin = *zmin_it, zmax = *zmax_it;
    const auto edges = [](const std::vector<double>& v, const AxisSpec& axis, std::size_t i) {
      // Cell boundaries halfway (in axis space) between neighbouring samples.
      const bool lg = axis.scale == AxisScale::Log10;
      const auto mid = [&](double a, double b) { return lg ? std::sqrt(a * b) : 0.5 * (a + b); };
      const double lo = i == 0 ? v[0] : mid(v[i - 1], v[i]);
      const double hi = i + 1 == v.size() ? v[i] : mid(v[i], v[i + 1]);
      return std::pair{lo, hi};
    };
    out << "<g clip-path=\"url(#plot)\" shape-rendering=\"crispEdges\">\n";
    for (std::size_t iy = 0; iy < g.y_values.size(); ++iy) {
      const auto [ylo, yhi] = edges(g.y_values, set.y_axis, iy);
      for (std::size_t ix = 0; ix < g.x_values.size(); ++ix) {
        const auto [xlo, xhi] = edges(g.x_values, set.x_axis, ix);
        const double z = g.z[iy * g.x_values.size() + ix];
        const double t = zmax > zmin ? (z - zmin) / (zmax - zmin) : 1.0;
        out << "<rect x=\"" << coord(sx(xlo)) << "\" y=\"" << coord(sy(yhi)) << "\" width=\""
            << coord(sx(xhi) - sx(xlo)) << "\" height=\"" << coord(sy(ylo) - sy(yhi))
            << "\" fill=\"" << ramp(t) << "\"/>\n";
      }
    }
    out << "</g>\n";
    // Colour bar on the right.
    const double bx = x1 + 40, bw = 14;
    for (int k = 0; k < 50; ++k) {
      const double ya = y0 - (y0 - y1) * (k + 1) / 50.0;
      out << "<rect x=\"" << coord(bx) << "\" y=\"" << coord(ya) << "\" width=\"" << bw
          << "\" height=\"" << coord((y0 - y1) / 50.0 + 0.5) << "\" fill=\"" << ramp((k + 0.5) / 50.0)
          << "\"/>\n";
    }
    out << "<text x=\"" << coord(bx + bw + 3) << "\" y=\"" << coord(y0) << "\">"
        << fmt::format("{:.3g}", zmin) << "</text>\n"
        << "<text x=\"" << coord(bx + bw + 3) << "\" y=\"" << coord(y1 + 10) << "\">"
        << fmt::format("{:.3g}", zmax) << "</text>\n"
        << "<text x=\"" << coord(bx + 7) << "\" y=\"" << coord(y1 - 8)
        << "\" text-anchor=\"middle\">" << escape(g.z_label) << "</text>\n";
  }

  // Grid lines and ticks.
  out << "<g stroke=\"#dddddd\" stroke-width=\"0.6\">\n";
  for (double t : sx.ticks())
    out << "<line x1=\"" << coord(sx(t)) << "\" y1=\"" << coord(y0) << "\" x2=\"" << coord(sx(t))
        << "\" y2=\"" << coord(y1) << "\"/>\n";
  for (double t : sy.ticks())
    out << "<line x1=\"" << coord(x0) << "\" y1=\"" << coord(sy(t)) << "\" x2=\"" << coord(x1)
        << "\" y2=\"" << coord(sy(t)) << "\"/>\n";
  out << "</g>\n";
  out << "<rect x=\"" << coord(x0) << "\" y=\"" << coord(y1) << "\" width=\"" << coord(x1 - x0)
      << "\" height=\"" << coord(y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : sx.ticks())
    out << "<text x=\"" << coord(sx(t)) << "\" y=\"" << coord(y0 + 18)
        << "\" text-anchor=\"middle\">" << escape(sx.tick_label(t)) << "</text>\n";
  for (double t : sy.ticks())
    out << "<text x=\"" << coord(x0 - 6) << "\" y=\"" << coord(sy(t) + 4)
        << "\" text-anchor=\"end\">" << escape(sy.tick_label(t)) << "</text>\n";
  if (sy2 && !set.grid)
    for (double t : sy2->ticks())
      out << "<text x=\"" << coord(x1 + 6) << "\" y=\"" << coord((*sy2)(t) + 4) << "\">"
          << escape(sy2->tick_label(t)) << "</text>\n";

  out << "<text x=\"" << coord((x0 + x1) / 2) << "\" y=\"" << coord(kHeight - 22)
      << "\" text-anchor=\"middle\">" << escape(axis_title(set.x_axis)) << "</text>\n"
      << "<text transform=\"translate(22," << coord((y0 + y1) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(axis_title(set.y_axis)) << "</text>\n";
  if (set.y2_axis && !set.grid)
    out << "<text transform=\"translate(" << coord(kWidth - 18) << ',' << coord((y0 + y1) / 2)
        << ") rotate(90)\" text-anchor=\"middle\">" << escape(axis_title(*set.y2_axis))
        << "</text>\n";

  // Model curves (a gridded set is already drawn as the heat map).
  struct LegendEntry {
    std::string name;
    std::string colour;
    std::optional<std::size_t> shape;
    bool dashed = false;
  };
  std::vector<LegendEntry> legend;
  std::size_t colour = 0;
  if (!set.grid) {
    out << "<g clip-path=\"url(#plot)\" fill=\"none\" stroke-width=\"1.8\">\n";
    for (const auto& s : set.series) {
      const Scale& ys = (s.axis == YAxis::Secondary && sy2) ? *sy2 : sy;
      const char* c = kPalette[colour++ % kPalette.size()];
      legend.push_back({s.name, c, std::nullopt, s.axis == YAxis::Secondary});
      std::string path;
      bool pen_down = false;
      for (const auto& p : s.points) {
        if (!sx.representable(p.x) || !ys.representable(p.y)) {
          pen_down = false;
          continue;
        }
        path += (pen_down ? " L" : (path.empty() ? "M" : " M")) + coord(sx(p.x)) + ',' +
                coord(ys(p.y));
        pen_down = true;
      }
      out << "<path d=\"" << path << "\" stroke=\"" << c << '"'
          << (s.axis == YAxis::Secondary ? " stroke-dasharray=\"6,3\"" : "") << "/>\n";
    }
    out << "</g>\n";
  }

  // Measured points.
  out << "<g clip-path=\"url(#plot)\">\n";
  for (std::size_t i = 0; i < set.overlays.size(); ++i) {
    const auto& s = set.overlays[i];
    const Scale& ys = (s.axis == YAxis::Secondary && sy2) ? *sy2 : sy;
    const char* c = set.grid ? "#ffffff" : kPalette[colour++ % kPalette.size()];
    legend.push_back({s.name, set.grid ? "#333333" : c, i});
    for (const auto& p : s.points)
      if (sx.representable(p.x) && ys.representable(p.y)) marker(out, i, sx(p.x), ys(p.y), c);
  }
  out << "</g>\n";

  // Legend.
  if (!legend.empty()) {
    const double lx = x0 + 10, ly = y1 + 10;
    std::size_t longest = 0;
    for (const auto& e : legend) longest = std::max(longest, e.name.size());
    out << "<rect x=\"" << coord(lx) << "\" y=\"" << coord(ly) << "\" width=\""
        << coord(36 + 6.6 * static_cast<double>(longest)) << "\" height=\""
        << coord(8 + 16 * static_cast<double>(legend.size()))
        << "\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#999999\"/>\n";
    for (std::size_t i = 0; i < legend.size(); ++i) {
      const double y = ly + 16 * (static_cast<double>(i) + 1);
      const auto& e = legend[i];
      if (e.shape)
        marker(out, *e.shape, lx + 16, y - 4, e.colour.c_str());
      else
        out << "<line x1=\"" << coord(lx + 6) << "\" y1=\"" << coord(y - 4) << "\" x2=\""
            << coord(lx + 26) << "\" y2=\"" << coord(y - 4) << "\" stroke=\"" << e.colour
            << "\" stroke-width=\"3\"" << (e.dashed ? " stroke-dasharray=\"6,3\"" : "") << "/>\n";
      out << "<text x=\"" << coord(lx + 30) << "\" y=\"" << coord(y) << "\">"
          << escape(e.name) << "</text>\n";
    }
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("SVG write failed");
}

}  // namespace perfwall::report
