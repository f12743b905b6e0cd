#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "betatile/error.hpp"
#include "betatile/io.hpp"

namespace betatile {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;
  double w = 800, h = 600, pad = 20;
  double X(double x) const { return pad + (x - x0) / (x1 - x0) * (w - 2 * pad); }
  double Y(double y) const { return h - pad - (y - y0) / (y1 - y0) * (h - 2 * pad); }
  double sx() const { return (w - 2 * pad) / (x1 - x0); }
  double sy() const { return (h - 2 * pad) / (y1 - y0); }
};

std::string header(const Frame& f) {
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << f.w << "\" height=\"" << f.h
    << "\" viewBox=\"0 0 " << f.w << " " << f.h << "\">\n";
  return o.str();
}

// occupied cells of -D_x in H, side s
std::set<std::vector<long>> neg_cells(const TileCloud& c, double s) {
  std::set<std::vector<long>> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::vector<long> k;
    for (const auto& col : c.x) k.push_back(long(std::floor(-col[i] / s)));
    out.insert(std::move(k));
  }
  return out;
}

// runs of consecutive cells on a line
std::vector<std::pair<long, long>> runs(const std::set<std::vector<long>>& cells) {
  std::vector<std::pair<long, long>> r;
  for (const auto& k : cells) {
    if (!r.empty() && r.back().second + 1 == k[0])
      r.back().second = k[0];
    else
      r.push_back({k[0], k[0]});
  }
  return r;
}

double resolution(const NatExt& nx, int dim) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& c : nx.clouds)
    for (const auto& col : c.x)
      for (double v : col) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
  double s = 2 * nx.err;
  double span = hi > lo ? hi - lo : 1.0;
  return std::max(s, span / (dim == 1 ? 2000.0 : 300.0));
}

}  // namespace

std::string owner_color(const QBeta& owner) { return kPalette[fnv1a(owner.str()) % 12]; }

std::string natext_svg(const Gifs& g, const NatExt& nx) {
  const PisotField& f = *g.t.field();
  int dim = f.hdim();
  if (dim > 2) fail(Errc::UnrenderableDimension, "SVG needs d = 2 or 3");
  double s = resolution(nx, dim);
  std::ostringstream o;
  if (dim == 1) {
    // (t, h) plane: J_x times -D_x
    Frame fr{INFINITY, -INFINITY, INFINITY, -INFINITY};
    std::vector<std::vector<std::pair<long, long>>> rs;
    for (size_t v = 0; v < nx.clouds.size(); ++v) {
      rs.push_back(runs(neg_cells(nx.clouds[v], s)));
      fr.x0 = std::min(fr.x0, nx.J[v].lo.approx());
      fr.x1 = std::max(fr.x1, nx.J[v].hi.approx());
      for (auto [a, b] : rs.back()) {
        fr.y0 = std::min(fr.y0, a * s);
        fr.y1 = std::max(fr.y1, (b + 1) * s);
      }
    }
    o << header(fr);
    for (size_t v = 0; v < nx.clouds.size(); ++v) {
      const QBeta& x = g.v.points[v];
      o << "<g id=\"J" << v << "\" fill=\"" << owner_color(x) << "\" fill-opacity=\"0.8\">\n";
      double t0 = fr.X(nx.J[v].lo.approx()), t1 = fr.X(nx.J[v].hi.approx());
      for (auto [a, b] : rs[v])
        o << "<rect x=\"" << num(t0) << "\" y=\"" << num(fr.Y((b + 1) * s)) << "\" width=\"" << num(t1 - t0)
          << "\" height=\"" << num((b + 1 - a) * s * fr.sy()) << "\"/>\n";
      o << "</g>\n";
    }
  } else {
    // tiles D_x in H
    Frame fr{INFINITY, -INFINITY, INFINITY, -INFINITY};
    std::vector<std::set<std::vector<long>>> cs;
    for (const auto& c : nx.clouds) {
      std::set<std::vector<long>> k;
      for (std::size_t i = 0; i < c.size(); ++i)
        k.insert({long(std::floor(c.x[0][i] / s)), long(std::floor(c.x[1][i] / s))});
      for (const auto& q : k) {
        fr.x0 = std::min(fr.x0, q[0] * s);
        fr.x1 = std::max(fr.x1, (q[0] + 1) * s);
        fr.y0 = std::min(fr.y0, q[1] * s);
        fr.y1 = std::max(fr.y1, (q[1] + 1) * s);
      }
      cs.push_back(std::move(k));
    }
    fr.h = fr.w * (fr.y1 - fr.y0) / (fr.x1 - fr.x0);
    o << header(fr);
    for (size_t v = 0; v < cs.size(); ++v) {
      if (nx.measure[v] <= 0) continue;
      o << "<g id=\"D" << v << "\" fill=\"" << owner_color(g.v.points[v]) << "\" fill-opacity=\"0.5\">\n";
      for (const auto& q : cs[v])
        o << "<rect x=\"" << num(fr.X(q[0] * s)) << "\" y=\"" << num(fr.Y((q[1] + 1) * s)) << "\" width=\""
          << num(s * fr.sx()) << "\" height=\"" << num(s * fr.sy()) << "\"/>\n";
      o << "</g>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

std::string translates_svg(const Gifs& g, const NatExt& nx, long box, long scale) {
  const PisotField& f = *g.t.field();
  int d = f.degree();
  if (d > 3) fail(Errc::UnrenderableDimension, "SVG needs d = 2 or 3");
  double s = resolution(nx, d - 1);
  // polygons (d = 2) or sample points (d = 3) of the domain in R^d
  std::vector<std::vector<std::vector<double>>> shapes;
  std::vector<double> v1 = f.v1();
  auto amb = [&](double t, const std::vector<double>& h) {
    std::vector<double> y = f.to_ambient(h);
    for (int i = 0; i < d; ++i) y[i] += t * v1[i];
    return y;
  };
  for (size_t v = 0; v < nx.clouds.size(); ++v) {
    if (nx.measure[v] <= 0) continue;
    double t0 = nx.J[v].lo.approx(), t1 = nx.J[v].hi.approx();
    if (d == 2) {
      for (auto [a, b] : runs(neg_cells(nx.clouds[v], s)))
        shapes.push_back({amb(t0, {a * s}), amb(t1, {a * s}), amb(t1, {(b + 1) * s}), amb(t0, {(b + 1) * s})});
    } else {
      for (const auto& k : neg_cells(nx.clouds[v], s))
        for (int i = 0; i < 4; ++i) {
          double t = t0 + (t1 - t0) * (i + 0.5) / 4;
          shapes.push_back({amb(t, {(k[0] + 0.5) * s, (k[1] + 0.5) * s})});
        }
    }
  }
  Frame fr{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (const auto& sh : shapes)
    for (const auto& p : sh) {
      fr.x0 = std::min(fr.x0, p[0] - double(box * scale));
      fr.x1 = std::max(fr.x1, p[0] + double(box * scale));
      fr.y0 = std::min(fr.y0, p[1] - double(box * scale));
      fr.y1 = std::max(fr.y1, p[1] + double(box * scale));
    }
  fr.h = fr.w * (fr.y1 - fr.y0) / (fr.x1 - fr.x0);
  std::ostringstream o;
  o << header(fr);
  std::vector<long> n(d, -box);
  for (;;) {
    std::vector<double> off(d);
    std::vector<mpq_class> nq;
    for (int i = 0; i < d; ++i) {
      off[i] = double(n[i] * scale);
      nq.push_back(mpq_class(n[i]));
    }
    o << "<g fill=\"" << owner_color(QBeta(g.t.field(), nq)) << "\" fill-opacity=\"0.6\">\n";
    for (const auto& sh : shapes) {
      if (sh.size() == 1) {
        o << "<circle cx=\"" << num(fr.X(sh[0][0] + off[0])) << "\" cy=\"" << num(fr.Y(sh[0][1] + off[1]))
          << "\" r=\"1\"/>\n";
        continue;
      }
      o << "<polygon points=\"";
      for (size_t i = 0; i < sh.size(); ++i)
        o << (i ? " " : "") << num(fr.X(sh[i][0] + off[0])) << "," << num(fr.Y(sh[i][1] + off[1]));
      o << "\"/>\n";
    }
    o << "</g>\n";
    int i = 0;
    while (i < d && n[i] == box) {
      n[i] = -box;
      ++i;
    }
    if (i == d) break;
    ++n[i];
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace betatile
