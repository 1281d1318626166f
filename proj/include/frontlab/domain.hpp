#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "frontlab/vec.hpp"

namespace frontlab {

enum class AmbientKind {
    Euclidean3,
    Sphere3,
    Hyperbolic3,
    FlatQuotient3,
    PlaneTarget2,
    SphereTarget2,
};

struct AmbientModel {
    AmbientKind kind = AmbientKind::Euclidean3;

    double curvature() const {
        switch (kind) {
            case AmbientKind::Sphere3: return 1.0;
            case AmbientKind::Hyperbolic3: return -1.0;
            default: return 0.0;
        }
    }
    int dim() const {
        switch (kind) {
            case AmbientKind::Sphere3:
            case AmbientKind::Hyperbolic3: return 4;
            case AmbientKind::PlaneTarget2: return 2;
            case AmbientKind::SphereTarget2: return 3;
            default: return 3;
        }
    }
    bool map_mode() const {
        return kind == AmbientKind::PlaneTarget2 || kind == AmbientKind::SphereTarget2;
    }
    const char* name() const {
        switch (kind) {
            case AmbientKind::Euclidean3: return "Euclidean3";
            case AmbientKind::Sphere3: return "Sphere3";
            case AmbientKind::Hyperbolic3: return "Hyperbolic3";
            case AmbientKind::FlatQuotient3: return "FlatQuotient3";
            case AmbientKind::PlaneTarget2: return "PlaneTarget2";
            case AmbientKind::SphereTarget2: return "SphereTarget2";
        }
        return "?";
    }
};

enum class DomainTopology { Plane, CylinderU, CylinderV, Torus, Sphere };

struct ParamDomain {
    double u_min = 0, u_max = 1;
    double v_min = 0, v_max = 1;
    bool u_periodic = false;
    bool v_periodic = false;
    bool pole_at_u_min = false;
    bool pole_at_u_max = false;

    double u_len() const { return u_max - u_min; }
    double v_len() const { return v_max - v_min; }

    void validate() const {
        if (!(u_len() > 0) || !(v_len() > 0)) throw std::invalid_argument("degenerate domain range");
        if ((pole_at_u_min || pole_at_u_max) && !v_periodic)
            throw std::invalid_argument("pole flags require v-periodicity");
    }

    DomainTopology topology() const {
        if (pole_at_u_min && pole_at_u_max) return DomainTopology::Sphere;
        if (u_periodic && v_periodic) return DomainTopology::Torus;
        if (u_periodic) return DomainTopology::CylinderU;
        if (v_periodic) return DomainTopology::CylinderV;
        return DomainTopology::Plane;
    }

    /// Whether the parametrized surface is closed (no free boundary).
    bool closed() const {
        auto t = topology();
        return t == DomainTopology::Torus || t == DomainTopology::Sphere;
    }

    int euler_characteristic() const {
        switch (topology()) {
            case DomainTopology::Sphere: return 2;
            case DomainTopology::Torus: return 0;
            case DomainTopology::Plane: return 1;
            default: return 0;
        }
    }

    static double wrap1(double x, double lo, double len) {
        double t = std::fmod(x - lo, len);
        if (t < 0) t += len;
        return lo + t;
    }

    Point2 wrap(Point2 q) const {
        if (u_periodic) q.u = wrap1(q.u, u_min, u_len());
        if (v_periodic) q.v = wrap1(q.v, v_min, v_len());
        return q;
    }

    bool contains(Point2 q) const {
        q = wrap(q);
        const double eps = 1e-12 * (u_len() + v_len());
        return q.u >= u_min - eps && q.u <= u_max + eps && q.v >= v_min - eps && q.v <= v_max + eps;
    }

    /// Shortest difference a-b respecting periodic wrapping, per axis.
    Point2 diff(Point2 a, Point2 b) const {
        Point2 d{a.u - b.u, a.v - b.v};
        if (u_periodic) {
            double L = u_len();
            d.u = std::remainder(d.u, L);
        }
        if (v_periodic) {
            double L = v_len();
            d.v = std::remainder(d.v, L);
        }
        return d;
    }
};

}  // namespace frontlab
