#include "oracles.hpp"

#include <cmath>

namespace gle::oracle {

cplx wp_lattice_sum(cplx z, cplx tau, int M) {
    cplx sum = 1.0 / (z * z);
    for (int m = -M; m <= M; ++m) {
        for (int n = -M; n <= M; ++n) {
            if (m == 0 && n == 0) continue;
            cplx w = double(m) + double(n) * tau;
            cplx d = z - w;
            sum += 1.0 / (d * d) - 1.0 / (w * w);
        }
    }
    return sum;
}

cplx zeta_lattice_sum(cplx z, cplx tau, int M) {
    cplx sum = 1.0 / z;
    for (int m = -M; m <= M; ++m) {
        for (int n = -M; n <= M; ++n) {
            if (m == 0 && n == 0) continue;
            cplx w = double(m) + double(n) * tau;
            sum += 1.0 / (z - w) + 1.0 / w + z / (w * w);
        }
    }
    return sum;
}

namespace {
// err(M) = a/M^2 + b/M^4 + O(M^-6); two Richardson levels on M, 2M, 4M.
template <typename F>
cplx richardson(F f, int M) {
    cplx s1 = f(M), s2 = f(2 * M), s3 = f(4 * M);
    cplx r1 = (4.0 * s2 - s1) / 3.0;
    cplx r2 = (4.0 * s3 - s2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}
}  // namespace

cplx wp_oracle(cplx z, cplx tau) {
    return richardson([&](int M) { return wp_lattice_sum(z, tau, M); }, 60);
}

cplx zeta_oracle(cplx z, cplx tau) {
    return richardson([&](int M) { return zeta_lattice_sum(z, tau, M); }, 60);
}

cplx random_cell_point(std::mt19937_64& rng, cplx tau, double margin,
                       bool avoid_half_lattice) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int tries = 0; tries < 10000; ++tries) {
        double s = u(rng), t = u(rng);
        cplx z = s + t * tau;
        double best = 1e9;
        int reps = avoid_half_lattice ? 4 : 1;
        static const double hs[4] = {0.0, 0.5, 0.0, 0.5};
        static const double ht[4] = {0.0, 0.0, 0.5, 0.5};
        for (int k = 0; k < reps; ++k) {
            for (int a = -1; a <= 1; ++a)
                for (int b = -1; b <= 1; ++b) {
                    cplx w = (hs[k] + a) + (ht[k] + b) * tau;
                    best = std::min(best, std::abs(z - w));
                }
        }
        if (best >= margin) return z;
    }
    throw Error("random_cell_point: could not satisfy margin");
}

cplx random_tau(std::mt19937_64& rng, double im_min, double im_max) {
    std::uniform_real_distribution<double> ur(-0.5, 0.5);
    std::uniform_real_distribution<double> ui(im_min, im_max);
    return cplx{ur(rng), ui(rng)};
}

}  // namespace gle::oracle
