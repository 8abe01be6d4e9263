#include "intlab/quadrature.hpp"

#include <cmath>

namespace intlab {

GaussLegendre gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    if (!(a < b)) throw std::invalid_argument("gauss_legendre: need a < b");
    GaussLegendre g;
    g.a = a;
    g.b = b;
    g.x.resize(n);
    g.w.resize(n);
    // Newton iteration on P_n, nodes on [-1,1], then affine map.
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
        g.x[i] = xm - xl * z;
        g.x[n - 1 - i] = xm + xl * z;
        g.w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        g.w[n - 1 - i] = g.w[i];
    }
    return g;
}

GaussLegendre gauss_legendre_composite(int m, const std::vector<double>& bp) {
    if (bp.size() < 2) throw std::invalid_argument("composite rule needs >= 2 breakpoints");
    GaussLegendre g;
    g.a = bp.front();
    g.b = bp.back();
    for (size_t k = 0; k + 1 < bp.size(); ++k) {
        GaussLegendre panel = gauss_legendre(m, bp[k], bp[k + 1]);
        g.x.insert(g.x.end(), panel.x.begin(), panel.x.end());
        g.w.insert(g.w.end(), panel.w.begin(), panel.w.end());
    }
    return g;
}

ContourDescriptor ContourDescriptor::rectangle(cplx center, double hw, double hh, int pts) {
    ContourDescriptor c;
    c.kind = ContourKind::Rectangle;
    c.center = center;
    c.half_width = hw;
    c.half_height = hh;
    c.points_per_side = pts;
    return c;
}

ContourDescriptor ContourDescriptor::circle(cplx center, double r, int pts) {
    ContourDescriptor c;
    c.kind = ContourKind::Circle;
    c.center = center;
    c.radius = r;
    c.points_per_side = pts;
    return c;
}

ContourDescriptor ContourDescriptor::segment(cplx a, cplx b, int pts) {
    ContourDescriptor c;
    c.kind = ContourKind::Segment;
    c.seg_a = a;
    c.seg_b = b;
    c.points_per_side = pts;
    return c;
}

namespace {

void append_edge(Quadrature& q, cplx za, cplx zb, int pts) {
    // Gauss-Legendre along the straight edge za -> zb.
    GaussLegendre g = gauss_legendre(pts, 0.0, 1.0);
    const cplx d = zb - za;
    for (int i = 0; i < pts; ++i) {
        q.nodes.push_back(za + d * g.x[i]);
        q.weights.push_back(d * g.w[i]);
    }
}

}  // namespace

Quadrature contour_quadrature(const ContourDescriptor& c) {
    Quadrature q;
    const int n = c.points_per_side;
    if (n < 2) throw std::invalid_argument("contour_quadrature: too few points");
    switch (c.kind) {
        case ContourKind::Circle: {
            if (!(c.radius > 0.0)) throw std::invalid_argument("degenerate circle");
            const double sgn = c.counterclockwise ? 1.0 : -1.0;
            for (int k = 0; k < n; ++k) {
                const double t = 2.0 * M_PI * k / n;
                const cplx z = c.center + c.radius * cplx(std::cos(t), sgn * std::sin(t));
                const cplx dz = c.radius * cplx(-std::sin(t), sgn * std::cos(t)) * sgn;
                q.nodes.push_back(z);
                q.weights.push_back(dz * (2.0 * M_PI / n) * sgn);
            }
            break;
        }
        case ContourKind::Rectangle: {
            if (!(c.half_width > 0.0) || !(c.half_height > 0.0))
                throw std::invalid_argument("degenerate rectangle");
            const cplx hw(c.half_width, 0.0), hh(0.0, c.half_height);
            cplx corners[4] = {c.center - hw - hh, c.center + hw - hh, c.center + hw + hh,
                               c.center - hw + hh};
            if (!c.counterclockwise) std::swap(corners[1], corners[3]);
            for (int e = 0; e < 4; ++e) append_edge(q, corners[e], corners[(e + 1) % 4], n);
            break;
        }
        case ContourKind::Segment: {
            if (std::abs(c.seg_b - c.seg_a) == 0.0)
                throw std::invalid_argument("degenerate segment");
            append_edge(q, c.seg_a, c.seg_b, n);
            break;
        }
    }
    return q;
}

namespace {

template <typename T>
std::vector<double> bary_weights(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<double> w(n, 1.0);
    // Rescale differences to the interval half-width to avoid under/overflow.
    double xmin = x[0], xmax = x[0];
    for (double v : x) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    const double scale = (xmax > xmin) ? 4.0 / (xmax - xmin) : 1.0;
    for (int i = 0; i < n; ++i) {
        double s = 1.0;
        for (int j = 0; j < n; ++j)
            if (j != i) s *= (x[i] - x[j]) * scale;
        w[i] = 1.0 / s;
    }
    return w;
}

}  // namespace

BarycentricInterp::BarycentricInterp(std::vector<double> nodes, std::vector<cplx> values)
    : x_(std::move(nodes)), f_(std::move(values)) {
    if (x_.size() != f_.size() || x_.empty())
        throw std::invalid_argument("BarycentricInterp: size mismatch");
    w_ = bary_weights<cplx>(x_);
}

cplx BarycentricInterp::operator()(double t) const {
    cplx num = 0.0, den = 0.0;
    for (size_t i = 0; i < x_.size(); ++i) {
        const double d = t - x_[i];
        if (d == 0.0) return f_[i];
        const double c = w_[i] / d;
        num += c * f_[i];
        den += c;
    }
    return num / den;
}

cplx BarycentricInterp::at(cplx t) const {
    cplx num = 0.0, den = 0.0;
    for (size_t i = 0; i < x_.size(); ++i) {
        const cplx d = t - x_[i];
        if (std::abs(d) == 0.0) return f_[i];
        const cplx c = w_[i] / d;
        num += c * f_[i];
        den += c;
    }
    return num / den;
}

BarycentricInterpReal::BarycentricInterpReal(std::vector<double> nodes,
                                             std::vector<double> values)
    : x_(std::move(nodes)), f_(std::move(values)) {
    if (x_.size() != f_.size() || x_.empty())
        throw std::invalid_argument("BarycentricInterpReal: size mismatch");
    w_ = bary_weights<double>(x_);
}

double BarycentricInterpReal::operator()(double t) const {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < x_.size(); ++i) {
        const double d = t - x_[i];
        if (d == 0.0) return f_[i];
        const double c = w_[i] / d;
        num += c * f_[i];
        den += c;
    }
    return num / den;
}

}  // namespace intlab
