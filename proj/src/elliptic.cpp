#include "gle/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace gle {

namespace {

// Log-derivatives of theta_1 at v from the ratios r_k = theta1^(k)/theta1.
// l1 = (log th)', l2 = (log th)'', l3 = (log th)''', l4 = (log th)''''.
struct LogDerivs {
    cplx l1, l2, l3, l4;
};

}  // namespace

struct EllipticContext::Impl {
    cplx tau;
    double tol;
    double excl;
    cplx q;  // exp(2 pi i tau), stored per the context contract
    int order;

    // theta_1(v) = 2 sum (-1)^n qh^{(n+1/2)^2} sin((2n+1) v), qh = exp(i pi tau).
    // coef[n] = 2 (-1)^n qh^{(n+1/2)^2}
    std::vector<cplx> coef;

    cplx eta1, eta2;
    std::array<cplx, 3> ek;
    cplx g2, g3;
    cplx th1p0;  // theta_1'(0)

    // theta_1 and derivatives up to `upto` (1..4) at v, via w = e^{iv}.
    // sin((2n+1)v) = (u - 1/u)/(2i) with u = w^{2n+1}.
    void theta1(cplx v, int upto, std::array<cplx, 5>& th) const {
        cplx w = std::exp(iu * v);
        cplx winv = 1.0 / w;
        cplx w2 = w * w, w2inv = winv * winv;
        cplx u = w, uinv = winv;
        th.fill(cplx{0.0});
        for (std::size_t n = 0; n < coef.size(); ++n) {
            double m = 2.0 * double(n) + 1.0;
            cplx s = (u - uinv) / (2.0 * iu);  // sin(m v)
            cplx co = (u + uinv) / 2.0;        // cos(m v)
            cplx cn = coef[n];
            th[0] += cn * s;
            if (upto >= 1) th[1] += cn * m * co;
            if (upto >= 2) th[2] -= cn * m * m * s;
            if (upto >= 3) th[3] -= cn * m * m * m * co;
            if (upto >= 4) th[4] += cn * m * m * m * m * s;
            u *= w2;
            uinv *= w2inv;
        }
    }

    LogDerivs log_derivs(cplx v, int upto) const {
        std::array<cplx, 5> th;
        theta1(v, upto, th);
        cplx r1 = th[1] / th[0];
        LogDerivs d{};
        d.l1 = r1;
        if (upto >= 2) {
            cplx r2 = th[2] / th[0];
            d.l2 = r2 - r1 * r1;
            if (upto >= 3) {
                cplx r3 = th[3] / th[0];
                d.l3 = r3 - 3.0 * r1 * r2 + 2.0 * r1 * r1 * r1;
                if (upto >= 4) {
                    cplx r4 = th[4] / th[0];
                    d.l4 = r4 - 4.0 * r1 * r3 - 3.0 * r2 * r2 +
                           12.0 * r1 * r1 * r2 - 6.0 * r1 * r1 * r1 * r1;
                }
            }
        }
        return d;
    }

    std::pair<double, double> coords(cplx z) const {
        double t = z.imag() / tau.imag();
        double s = z.real() - t * tau.real();
        return {s, t};
    }

    // z = z_red + m + n tau with cell coordinates of z_red in [-1/2, 1/2)
    void split(cplx z, cplx& zred, long& m, long& n) const {
        auto [s, t] = coords(z);
        m = static_cast<long>(std::floor(s + 0.5));
        n = static_cast<long>(std::floor(t + 0.5));
        zred = z - (double(m) + double(n) * tau);
    }

    double dist_to_lattice(cplx z) const {
        cplx zr;
        long m, n;
        split(z, zr, m, n);
        double best = std::abs(zr);
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                best = std::min(best, std::abs(zr - (double(a) + double(b) * tau)));
        return best;
    }
};

EllipticContext EllipticContext::make(cplx tau, double tol, double pole_exclusion) {
    if (!(tau.imag() > 0.0))
        throw NonPositiveImaginaryPart("make_context: Im(tau) must be positive");
    const double eps = std::numeric_limits<double>::epsilon();
    if (!(tol >= 100.0 * eps))
        throw AccuracyUnreachable("make_context: tol below 100 * machine epsilon");

    auto impl = std::make_shared<Impl>();
    impl->tau = tau;
    impl->tol = tol;
    impl->excl = pole_exclusion;
    impl->q = std::exp(two_pi_i * tau);

    // Series coefficients.  With z reduced to the centered cell, |Im(pi z)|
    // <= pi Im(tau)/2, so term n is bounded by
    //   2 |qh|^{(n+1/2)^2} exp((2n+1) pi Im(tau)/2) = 2 exp(-pi Im(tau) n (n+1) + pi Im(tau)/4 + ...)
    // which decays super-geometrically; truncate when the bound (with the
    // worst derivative factor (2n+1)^4) drops below machine noise.
    const double y = tau.imag();
    cplx qh = std::exp(iu * pi * tau);
    const int max_terms = 80;
    cplx c = 2.0 * std::pow(qh, 0.25);
    double growth_exp = pi * y / 2.0;  // per unit of (2n+1) in the sin factor
    double lead = std::abs(c) * std::exp(growth_exp);
    bool converged = false;
    for (int n = 0; n < max_terms; ++n) {
        impl->coef.push_back(c);
        double m = 2.0 * n + 1.0;
        double bound = std::abs(c) * std::exp(m * growth_exp) * m * m * m * m;
        if (n > 0 && bound < 1e-18 * std::max(1.0, lead)) {
            converged = true;
            break;
        }
        c *= -std::pow(qh, 2.0 * n + 2.0);
    }
    if (!converged)
        throw AccuracyUnreachable("make_context: theta series cannot meet tol at this Im(tau)");
    impl->order = static_cast<int>(impl->coef.size());

    // eta_1 = -(pi^2/3) theta1'''(0) / theta1'(0); eta_2 by Legendre.
    std::array<cplx, 5> th0;
    impl->theta1(cplx{0.0}, 3, th0);
    impl->th1p0 = th0[1];
    impl->eta1 = -(pi * pi / 3.0) * th0[3] / th0[1];
    impl->eta2 = tau * impl->eta1 - two_pi_i;

    // e_k = wp(omega_k/2) straight from the series (the constructor cannot
    // use the public wp() yet, so inline the formula).
    auto wp_raw = [&](cplx z) {
        cplx zr;
        long m, n;
        impl->split(z, zr, m, n);
        LogDerivs d = impl->log_derivs(pi * zr, 2);
        return -impl->eta1 - pi * pi * d.l2;
    };
    impl->ek[0] = wp_raw(0.5);
    impl->ek[1] = wp_raw(0.5 * tau);
    impl->ek[2] = wp_raw(0.5 * (1.0 + tau));
    const cplx e1 = impl->ek[0], e2 = impl->ek[1], e3 = impl->ek[2];
    impl->g2 = -4.0 * (e1 * e2 + e2 * e3 + e3 * e1);
    impl->g3 = 4.0 * e1 * e2 * e3;

    EllipticContext ctx(impl);

    // Construction-time invariants.
    double scale = std::max(1.0, std::abs(e1));
    if (std::abs(e1 + e2 + e3) > tol * scale)
        throw AccuracyUnreachable("make_context: e1+e2+e3 invariant violated");
    if (std::abs(tau * impl->eta1 - impl->eta2 - two_pi_i) > tol * 2.0 * pi)
        throw AccuracyUnreachable("make_context: Legendre relation violated");
    return ctx;
}

cplx EllipticContext::tau() const { return impl_->tau; }
double EllipticContext::tol() const { return impl_->tol; }
double EllipticContext::pole_exclusion() const { return impl_->excl; }
int EllipticContext::series_order() const { return impl_->order; }

cplx EllipticContext::half_period(int k) const {
    switch (k) {
        case 0: return cplx{0.0};
        case 1: return cplx{0.5};
        case 2: return 0.5 * impl_->tau;
        case 3: return 0.5 * (1.0 + impl_->tau);
        default: throw Error("half_period: k must be 0..3");
    }
}

cplx EllipticContext::omega(int j) const {
    switch (j) {
        case 1: return cplx{1.0};
        case 2: return impl_->tau;
        case 3: return 1.0 + impl_->tau;
        default: throw Error("omega: j must be 1..3");
    }
}

cplx EllipticContext::e(int k) const {
    if (k < 1 || k > 3) throw Error("e: k must be 1..3");
    return impl_->ek[k - 1];
}

cplx EllipticContext::g2() const { return impl_->g2; }
cplx EllipticContext::g3() const { return impl_->g3; }

cplx EllipticContext::eta(int j) const {
    if (j == 1) return impl_->eta1;
    if (j == 2) return impl_->eta2;
    throw Error("eta: j must be 1 or 2");
}

cplx EllipticContext::eta3() const { return impl_->eta1 + impl_->eta2; }
cplx EllipticContext::nome() const { return impl_->q; }

WpTriple EllipticContext::wp(cplx z) const {
    if (impl_->dist_to_lattice(z) < impl_->excl)
        throw PoleProximity("wp: z within pole-exclusion radius of a lattice point");
    cplx zr;
    long m, n;
    impl_->split(z, zr, m, n);
    LogDerivs d = impl_->log_derivs(pi * zr, 4);
    WpTriple out;
    out.value = -impl_->eta1 - pi * pi * d.l2;
    out.deriv = -pi * pi * pi * d.l3;
    out.deriv2 = -pi * pi * pi * pi * d.l4;
    return out;
}

cplx EllipticContext::wp_value(cplx z) const {
    if (impl_->dist_to_lattice(z) < impl_->excl)
        throw PoleProximity("wp: z within pole-exclusion radius of a lattice point");
    cplx zr;
    long m, n;
    impl_->split(z, zr, m, n);
    LogDerivs d = impl_->log_derivs(pi * zr, 2);
    return -impl_->eta1 - pi * pi * d.l2;
}

cplx EllipticContext::zeta(cplx z) const {
    if (impl_->dist_to_lattice(z) < impl_->excl)
        throw PoleProximity("zeta: z within pole-exclusion radius of a lattice point");
    cplx zr;
    long m, n;
    impl_->split(z, zr, m, n);
    LogDerivs d = impl_->log_derivs(pi * zr, 1);
    cplx base = impl_->eta1 * zr + pi * d.l1;
    return base + double(m) * impl_->eta1 + double(n) * impl_->eta2;
}

cplx EllipticContext::sigma(cplx z) const {
    cplx zr;
    long m, n;
    impl_->split(z, zr, m, n);
    std::array<cplx, 5> th;
    impl_->theta1(pi * zr, 0, th);
    cplx base = std::exp(impl_->eta1 * zr * zr / 2.0) * th[0] / (pi * impl_->th1p0);
    if (m == 0 && n == 0) return base;
    // sigma(zr + L) = (-1)^{m+n+mn} exp(eta_L (zr + L/2)) sigma(zr), L = m + n tau
    cplx L = double(m) + double(n) * impl_->tau;
    cplx etaL = double(m) * impl_->eta1 + double(n) * impl_->eta2;
    double sign = ((m + n + m * n) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(etaL * (zr + 0.5 * L)) * base;
}

cplx EllipticContext::reduce(cplx z) const {
    cplx zr;
    long m, n;
    impl_->split(z, zr, m, n);
    return zr;
}

std::pair<double, double> EllipticContext::lattice_coords(cplx z) const {
    return impl_->coords(z);
}

double EllipticContext::lattice_distance(cplx z) const {
    return impl_->dist_to_lattice(z);
}

double EllipticContext::half_lattice_distance(cplx z) const {
    double best = impl_->dist_to_lattice(z);
    for (int k = 1; k <= 3; ++k)
        best = std::min(best, impl_->dist_to_lattice(z - half_period(k)));
    return best;
}

cplx EllipticContext::invert_wp(cplx w, cplx seed) const {
    cplx p = seed;
    for (int it = 0; it < 80; ++it) {
        if (impl_->dist_to_lattice(p) < 1e-12) p += 1e-6 * (1.0 + iu);
        WpTriple t = wp(p);
        cplx f = t.value - w;
        double scale = 1.0 + std::abs(w);
        if (std::abs(f) < 1e-12 * scale && it > 0) return p;
        cplx step;
        if (std::abs(t.deriv) > 1e-9 * scale) {
            step = f / t.deriv;
        } else {
            // near a critical point e_k: second-order model
            cplx d2 = t.deriv2;
            if (std::abs(d2) < 1e-12) throw InversionFailed("invert_wp: degenerate Newton step");
            cplx disc = std::sqrt(t.deriv * t.deriv + 2.0 * d2 * f);
            cplx s1 = (t.deriv + disc) / d2, s2 = (t.deriv - disc) / d2;
            step = (std::abs(s1) < std::abs(s2)) ? s1 : s2;
        }
        // keep iterates out of the pole neighborhoods
        double lim = 0.45 * std::min(1.0, std::abs(impl_->tau));
        if (std::abs(step) > lim) step *= lim / std::abs(step);
        p -= step;
    }
    WpTriple t = wp(p);
    if (std::abs(t.value - w) < 1e-9 * (1.0 + std::abs(w))) return p;
    throw InversionFailed("invert_wp: Newton did not converge from seed");
}

cplx EllipticContext::invert_wp(cplx w) const {
    const cplx tau = impl_->tau;
    std::vector<cplx> seeds;
    // asymptotic seed for large |w|: wp(p) ~ 1/p^2
    if (std::abs(w) > 4.0) seeds.push_back(1.0 / std::sqrt(w));
    // near-critical seeds
    for (int k = 1; k <= 3; ++k) {
        cplx hk = half_period(k);
        cplx d2 = wp(hk).deriv2;
        if (std::abs(w - e(k)) < 0.5 * std::max(1.0, std::abs(e(k))))
            seeds.push_back(hk + std::sqrt(2.0 * (w - e(k)) / d2));
    }
    const int G = 6;
    for (int i = 0; i < G; ++i)
        for (int j = 0; j < G; ++j)
            seeds.push_back((i + 0.5) / G - 0.5 + ((j + 0.5) / G - 0.5) * tau);

    for (cplx seed : seeds) {
        try {
            cplx p = invert_wp(w, seed);
            // canonical representative among {p, -p} mod lattice:
            // coordinates (s, t) with t > 0, or t = 0 and s >= 0
            cplx pr = reduce(p);
            cplx pm = reduce(-p);
            auto key = [&](cplx v) {
                auto [s, t] = impl_->coords(v);
                return std::pair<double, double>(t, s);
            };
            auto [sp, tp] = impl_->coords(pr);
            (void)key;
            const double tz = 1e-12;
            cplx cand;
            if (tp > tz)
                cand = pr;
            else if (tp < -tz)
                cand = pm;
            else
                cand = (sp >= 0.0) ? pr : pm;
            // confirm on the chosen representative
            if (std::abs(wp_value(cand) - w) < 1e-9 * (1.0 + std::abs(w))) return cand;
        } catch (const Error&) {
            continue;
        }
    }
    throw InversionFailed("invert_wp: no grid start converged");
}

}  // namespace gle
