#ifndef PENTAMAP_TOOLS_SVG_HPP
#define PENTAMAP_TOOLS_SVG_HPP

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

// Minimal deterministic SVG 1.1 emitter: fixed 6-decimal coordinates, a
// fixed viewBox mapping the data window affinely (y flipped to screen
// coordinates).
class SvgCanvas {
public:
    SvgCanvas(double x0, double x1, double y0, double y1, int pixels = 800)
        : x0_(x0), x1_(x1), y0_(y0), y1_(y1), w_(pixels),
          h_(static_cast<int>(pixels * (y1 - y0) / (x1 - x0))) {}

    void add_comment(const std::string& text) {
        body_ << "<!-- " << text << " -->\n";
    }

    void add_style(const std::string& css) { style_ += css; }

    void polyline(const std::vector<std::pair<double, double>>& pts,
                  const std::string& cls) {
        if (pts.size() < 2) return;
        body_ << "<polyline class=\"" << cls << "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) body_ << ' ';
            body_ << fmt(px(pts[i].first)) << ',' << fmt(py(pts[i].second));
        }
        body_ << "\"/>\n";
    }

    void line(double ax, double ay, double bx, double by, const std::string& cls) {
        body_ << "<line class=\"" << cls << "\" x1=\"" << fmt(px(ax)) << "\" y1=\""
              << fmt(py(ay)) << "\" x2=\"" << fmt(px(bx)) << "\" y2=\"" << fmt(py(by))
              << "\"/>\n";
    }

    void circle(double cx, double cy, double r, const std::string& cls) {
        body_ << "<circle class=\"" << cls << "\" cx=\"" << fmt(px(cx)) << "\" cy=\""
              << fmt(py(cy)) << "\" r=\"" << fmt(r * w_ / (x1_ - x0_)) << "\"/>\n";
    }

    void arc_path(const std::vector<std::pair<double, double>>& pts,
                  const std::string& cls) {
        polyline(pts, cls);
    }

    void rect(double x, double y, double wx, double wy, const std::string& fill) {
        body_ << "<rect x=\"" << fmt(px(x)) << "\" y=\"" << fmt(py(y + wy)) << "\" width=\""
              << fmt(wx * w_ / (x1_ - x0_)) << "\" height=\"" << fmt(wy * h_ / (y1_ - y0_))
              << "\" fill=\"" << fill << "\"/>\n";
    }

    void marker(double x, double y, const std::string& cls) {
        body_ << "<circle class=\"" << cls << "\" cx=\"" << fmt(px(x)) << "\" cy=\""
              << fmt(py(y)) << "\" r=\"3\"/>\n";
    }

    std::string render() const {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 "
            << w_ << ' ' << h_ << "\">\n";
        if (!style_.empty()) out << "<style>" << style_ << "</style>\n";
        out << body_.str();
        out << "</svg>\n";
        return out.str();
    }

private:
    double px(double x) const { return (x - x0_) / (x1_ - x0_) * w_; }
    double py(double y) const { return (y1_ - y) / (y1_ - y0_) * h_; }

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return buf;
    }

    double x0_, x1_, y0_, y1_;
    int w_, h_;
    std::string style_;
    std::ostringstream body_;
};

#endif
