#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Minimal static SVG builder for batch report plots.
namespace hcts::svg {

inline std::string num(double v) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

inline std::string escape(std::string_view s) {
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

struct Stroke {
    std::string color = "black";
    double width = 1.0;
    std::string dash; // e.g. "6,4"; empty for solid
};

class Document {
public:
    Document(double width, double height) : width_(width), height_(height) {}

    void rect(double x, double y, double w, double h, std::string_view fill, const Stroke* stroke = nullptr) {
        body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
              << "\" fill=\"" << fill << '"' << stroke_attrs(stroke) << "/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const Stroke& s = {}) {
        body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
              << '"' << stroke_attrs(&s) << "/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const Stroke& s = {}) {
        body_ << "<polyline fill=\"none\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
        body_ << '"' << stroke_attrs(&s) << "/>\n";
    }

    void circle(double cx, double cy, double r, std::string_view fill) {
        body_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(double x, double y, std::string_view str, double size = 11.0, std::string_view anchor = "start") {
        body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << num(size)
              << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << escape(str) << "</text>\n";
    }

    std::string str() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_) << "\" height=\"" << num(height_)
            << "\" viewBox=\"0 0 " << num(width_) << ' ' << num(height_) << "\">\n"
            << "<rect x=\"0\" y=\"0\" width=\"" << num(width_) << "\" height=\"" << num(height_) << "\" fill=\"white\"/>\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    static std::string stroke_attrs(const Stroke* s) {
        if (!s) return {};
        std::string a = " stroke=\"" + s->color + "\" stroke-width=\"" + num(s->width) + '"';
        if (!s->dash.empty()) a += " stroke-dasharray=\"" + s->dash + '"';
        return a;
    }

    double width_;
    double height_;
    std::ostringstream body_;
};

} // namespace hcts::svg
