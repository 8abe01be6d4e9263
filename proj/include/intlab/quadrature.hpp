#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace intlab {

using cplx = std::complex<double>;

// Gauss-Legendre rule on a real interval [a,b].
struct GaussLegendre {
    std::vector<double> x, w;
    double a = -1.0, b = 1.0;
    int size() const { return static_cast<int>(x.size()); }
};

GaussLegendre gauss_legendre(int n, double a, double b);

// n-panel composite rule: GL of order m on each panel of a subdivision.
GaussLegendre gauss_legendre_composite(int m, const std::vector<double>& breakpoints);

enum class ContourKind { Rectangle, Circle, Segment };

// Closed (or open, for Segment) integration path in the complex plane.
struct ContourDescriptor {
    ContourKind kind = ContourKind::Circle;
    cplx center = 0.0;
    double half_width = 1.0;   // rectangle
    double half_height = 1.0;  // rectangle
    double radius = 1.0;       // circle
    cplx seg_a = -1.0, seg_b = 1.0;
    bool counterclockwise = true;
    int points_per_side = 64;

    static ContourDescriptor rectangle(cplx center, double hw, double hh, int pts = 64);
    static ContourDescriptor circle(cplx center, double r, int pts = 128);
    static ContourDescriptor segment(cplx a, cplx b, int pts = 64);
};

// Nodes and weights for \oint f(z) dz along the described path.  Circles use
// the trapezoid rule (spectral for periodic integrands); rectangles use
// per-side Gauss-Legendre so that corners do not degrade the accuracy.
struct Quadrature {
    std::vector<cplx> nodes, weights;
    int size() const { return static_cast<int>(nodes.size()); }
    cplx integrate(const std::function<cplx(cplx)>& f) const {
        cplx s = 0.0;
        for (int i = 0; i < size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

Quadrature contour_quadrature(const ContourDescriptor& c);

inline Quadrature to_quadrature(const GaussLegendre& g) {
    Quadrature q;
    q.nodes.assign(g.x.begin(), g.x.end());
    q.weights.assign(g.w.begin(), g.w.end());
    return q;
}

// Barycentric Lagrange interpolation through fixed nodes; stable for
// Gauss-Legendre grids.  Values may be real or complex.
class BarycentricInterp {
public:
    BarycentricInterp() = default;
    BarycentricInterp(std::vector<double> nodes, std::vector<cplx> values);
    cplx operator()(double t) const;
    cplx at(cplx t) const;  // complex evaluation point (off-grid analytic continuation)
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<cplx>& values() const { return f_; }

private:
    std::vector<double> x_;
    std::vector<cplx> f_;
    std::vector<double> w_;
};

class BarycentricInterpReal {
public:
    BarycentricInterpReal() = default;
    BarycentricInterpReal(std::vector<double> nodes, std::vector<double> values);
    double operator()(double t) const;
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& values() const { return f_; }

private:
    std::vector<double> x_;
    std::vector<double> f_;
    std::vector<double> w_;
};

}  // namespace intlab
