#include "schottky/svg.hpp"

#include <cstdio>
#include <ostream>

namespace schottky {

namespace {

// depth -> fill, cycled past the palette end
const char* kPalette[] = {"#1b6ca8", "#d1495b", "#66a182", "#edae49",
                          "#8d5a97", "#00798c", "#c77b3f", "#4a5759"};
constexpr int kPaletteSize = 8;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void render_svg(std::ostream& os, const SchottkySet& s,
                const std::vector<OrbitBall>& balls, const SvgOptions& opt) {
  if (s.n != 2)
    raise(ErrorKind::NumericalDegeneracy, "SVG rendering is n = 2 only");
  double w = opt.window_halfwidth;
  double px_per_unit = opt.pixels / (2.0 * w);
  auto sx = [&](double x) { return (x - (opt.window_cx - w)) * px_per_unit; };
  auto sy = [&](double y) { return ((opt.window_cy + w) - y) * px_per_unit; };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << opt.pixels << "\" height=\"" << opt.pixels << "\" viewBox=\"0 0 "
     << opt.pixels << " " << opt.pixels << "\">\n";
  os << "  <title>orbit balls, depth-colored (depth 1 = peripheral caps)</title>\n";
  os << "  <!-- legend: depth d fills with palette[(d-1) % " << kPaletteSize
     << "]: ";
  for (int i = 0; i < kPaletteSize; ++i) os << (i ? ", " : "") << kPalette[i];
  os << " -->\n";
  os << "  <rect width=\"" << opt.pixels << "\" height=\"" << opt.pixels
     << "\" fill=\"#ffffff\"/>\n";

  std::size_t drawn = 0;
  for (const OrbitBall& b : balls) {
    int depth = static_cast<int>(b.word.size());
    const char* fill = kPalette[(depth - 1) % kPaletteSize];
    try {
      ChartCircle cc = chart_circle_from_cap(b.cap);
      double cx = sx(cc.ball.center[0]);
      double cy = sy(cc.ball.center[1]);
      double r = cc.ball.radius * px_per_unit;
      if (cc.cap_is_interior) {
        os << "  <circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\""
           << num(r) << "\" fill=\"" << fill
           << "\" fill-opacity=\"0.55\" stroke=\"#222222\" stroke-width=\"0.6\">"
           << "<title>" << b.word.str() << "</title></circle>\n";
      } else {
        os << "  <circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\""
           << num(r) << "\" fill=\"none\" stroke=\"" << fill
           << "\" stroke-width=\"1.2\"><title>" << b.word.str()
           << " (unbounded side)</title></circle>\n";
      }
      ++drawn;
    } catch (const Error&) {
      // boundary through the pole: draw the chart line is out of scope
    }
  }
  os << "  <!-- circles drawn: " << drawn << " of " << balls.size() << " -->\n";
  os << "</svg>\n";
}

}  // namespace schottky
