#include "cjet/paradiff.hpp"

#include <cmath>
#include <numbers>

#include "cjet/errors.hpp"

namespace cjet {

namespace {

// C^2 quintic smoothstep on [0,1].
double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Real fields have exactly Hermitian spectra; the complex FFT only delivers
// that up to roundoff, which the high-order multipliers would amplify.
SpectralField hermitian_forward(const RealField& u) {
    SpectralField spec = transform_forward(u);
    const int n = spec.size();
    spec[0] = Complex(spec[0].real(), 0.0);
    spec[n / 2] = Complex(spec[n / 2].real(), 0.0);
    for (int k = 1; k < n / 2; ++k) {
        Complex avg = 0.5 * (spec[k] + std::conj(spec[n - k]));
        spec[k] = avg;
        spec[n - k] = std::conj(avg);
    }
    return spec;
}

RealField spectral_antiderivative_periodic(const RealField& f, double& mean_out) {
    const GridSpec& g = *f.grid();
    SpectralField spec = transform_forward(f);
    mean_out = spec[0].real();
    SpectralField out(f.grid());
    for (int k = 1; k < g.size(); ++k) {
        if (k == g.nyquist_index()) continue;
        out[k] = spec[k] / Complex(0.0, g.wavenumber(k));
    }
    return transform_inverse(out);
}

} // namespace

double CutoffPair::chi(double theta, double zeta) const {
    double az = std::abs(zeta);
    if (az == 0.0) return theta == 0.0 ? 1.0 : 0.0;
    double t = std::abs(theta) / az;
    return 1.0 - smoothstep((t - eps1) / (eps2 - eps1));
}

double CutoffPair::phi(double zeta) const {
    return smoothstep((std::abs(zeta) - 0.5) / 0.5);
}

Complex SeparableSymbol::eval(int j, double xi) const {
    Complex sum(0.0);
    for (const auto& term : terms) sum += term.coeff[j] * term.mult(xi);
    return sum;
}

SpectralField paraop_apply_spectral(const SeparableSymbol& a, const RealField& u,
                                    const CutoffPair& cut) {
    const GridSpec& g = *u.grid();
    for (const auto& term : a.terms)
        if (!(*term.coeff.grid() == g)) throw GridMismatch("symbol and input on different grids");

    const int n = g.size();
    const int nyq = g.nyquist_index();
    SpectralField uhat = hermitian_forward(u);
    SpectralField out(u.grid());

    // Active input modes (phi kills |zeta| <= 1/2 and we exclude the Nyquist).
    std::vector<int> active;
    std::vector<double> phi_table(n, 0.0);
    for (int j = 0; j < n; ++j) {
        if (j == nyq) continue;
        double w = cut.phi(g.wavenumber(j));
        if (w > 0.0 && std::abs(uhat[j]) > 0.0) {
            active.push_back(j);
            phi_table[j] = w;
        }
    }

    for (const auto& term : a.terms) {
        SpectralField chat = hermitian_forward(term.coeff);
        std::vector<Complex> mtab(n);
        for (int j = 0; j < n; ++j) mtab[j] = term.mult(g.wavenumber(j));

        for (int i = 0; i < n; ++i) {
            if (i == nyq) continue;
            int mi = g.mode_index(i);
            // Extended-precision accumulation keeps the Hermitian symmetry of
            // the output below the 1e-12 reality threshold.
            std::complex<long double> acc(0.0L);
            for (int j : active) {
                int mj = g.mode_index(j);
                int d = mi - mj;
                int kd = g.index_of_mode(d);
                if (kd < 0 || kd == nyq) continue; // outside the resolved band
                double zeta = g.wavenumber(j);
                double w = cut.chi(std::numbers::pi * d / g.half_period(), zeta);
                if (w == 0.0) continue;
                Complex term = chat[kd] * mtab[j] * uhat[j];
                acc += std::complex<long double>(w * phi_table[j]) *
                       std::complex<long double>(term.real(), term.imag());
            }
            out[i] += Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
        }
    }
    return out;
}

RealField paraop_apply(const SeparableSymbol& a, const RealField& u, const CutoffPair& cut) {
    return transform_inverse(paraop_apply_spectral(a, u, cut));
}

SeparableSymbol coefficient_symbol(const RealField& c) {
    SeparableSymbol s;
    s.grid = c.grid();
    s.order = 0.0;
    s.terms.push_back({c, [](double) { return Complex(1.0); }});
    return s;
}

SeparableSymbol symbol_lambda(const RealField& eta) {
    require_positive_radius(eta);
    RealField eta_z = derivative(eta);
    RealField c0(eta.grid());
    RealField c_sgn(eta.grid());
    for (int j = 0; j < eta.size(); ++j) {
        double ez = eta_z[j];
        c0[j] = -(1.0 + 2.0 * ez * ez) / (2.0 * eta[j]);
        c_sgn[j] = -ez * ez * ez / (2.0 * eta[j]);
    }
    SeparableSymbol s;
    s.grid = eta.grid();
    s.order = 1.0;
    s.terms.push_back({RealField(eta.grid(), 1.0), [](double xi) { return Complex(std::abs(xi)); }});
    s.terms.push_back({std::move(c0), [](double) { return Complex(1.0); }});
    s.terms.push_back({std::move(c_sgn), [](double xi) { return Complex(0.0, sgn(xi)); }});
    return s;
}

EllSymbol symbol_ell(const RealField& eta) {
    require_positive_radius(eta);
    RealField eta_z = derivative(eta);
    RealField eta_zz = derivative(eta_z);
    RealField c2(eta.grid());
    RealField c1(eta.grid());
    RealField ell0(eta.grid());
    for (int j = 0; j < eta.size(); ++j) {
        double e = eta[j], ez = eta_z[j], ezz = eta_zz[j];
        double s1 = 1.0 + ez * ez;
        c2[j] = 0.5 / std::pow(s1, 1.5);
        c1[j] = ez * (3.0 * e * ezz - 1.0 - ez * ez) / (2.0 * e * std::pow(s1, 2.5));
        ell0[j] = 1.0 / (2.0 * e * e * std::sqrt(s1));
    }
    SeparableSymbol s;
    s.grid = eta.grid();
    s.order = 2.0;
    s.terms.push_back({std::move(c2), [](double xi) { return Complex(xi * xi); }});
    s.terms.push_back({std::move(c1), [](double xi) { return Complex(0.0, xi); }});
    return EllSymbol{std::move(s), std::move(ell0)};
}

RealField good_unknown(const RealField& eta, const RealField& psi,
                       const RealField& B, const CutoffPair& cut) {
    return psi - paraop_apply(coefficient_symbol(B), eta, cut);
}

RealField paralin_residual(const RealField& eta, const RealField& psi,
                           const CutoffPair& cut, const DnoOptions& opt) {
    RealField g = dn_general(eta, psi, opt);
    TraceVelocities tv = trace_velocities(eta, psi, g);
    RealField u = good_unknown(eta, psi, tv.B, cut);
    SeparableSymbol lambda = symbol_lambda(eta);
    RealField t_lambda_u = paraop_apply(lambda, u, cut);
    RealField t_v_etaz = paraop_apply(coefficient_symbol(tv.V), derivative(eta), cut);
    return g - t_lambda_u + t_v_etaz;
}

SymmetrizerSymbols symmetrizer_symbols(const RealField& eta) {
    require_positive_radius(eta);
    const GridPtr& grid = eta.grid();
    const int n = eta.size();
    const double rbar = mean_value(eta);
    RealField eta_z = derivative(eta);
    RealField eta_zz = derivative(eta_z);

    RealField w(grid);       // gamma^(3/2) coefficient
    RealField g_re(grid);    // Re gamma^(1/2) coefficient
    RealField ell1c(grid);   // ell^(1) coefficient (of i xi)
    RealField qfac(grid);    // q before the antiderivative factor
    RealField integrand(grid);
    for (int j = 0; j < n; ++j) {
        double e = eta[j], ez = eta_z[j], ezz = eta_zz[j];
        double s1 = 1.0 + ez * ez;
        w[j] = 1.0 / (std::sqrt(2.0) * std::pow(s1, 0.75));
        g_re[j] = w[j] * (-(1.0 + 2.0 * ez * ez) / (2.0 * e)) * 0.5;
        ell1c[j] = ez * (3.0 * e * ezz - 1.0 - ez * ez) / (2.0 * e * std::pow(s1, 2.5));
        qfac[j] = std::cbrt(rbar / e) / std::pow(s1, 0.25);
        integrand[j] = ez * ez * ez / (6.0 * e);
    }
    double mu = 0.0;
    RealField q_exp = spectral_antiderivative_periodic(integrand, mu);
    RealField q(grid);
    for (int j = 0; j < n; ++j) q[j] = qfac[j] * std::exp(-q_exp[j]);

    RealField w_z = derivative(w);
    RealField g_im(grid); // Im gamma^(1/2) coefficient (of i sgn(xi)|xi|^{1/2})
    for (int j = 0; j < n; ++j) g_im[j] = -0.75 * w_z[j];

    RealField pc = q * w; // p^(1/2) coefficient
    RealField pc_z = derivative(pc);

    RealField p_m_re(grid);  // coefficient of |xi|^{-1/2}
    RealField p_m_im(grid);  // coefficient of i sgn(xi) |xi|^{-1/2}
    for (int j = 0; j < n; ++j) {
        p_m_re[j] = -g_re[j] * pc[j] / w[j];
        p_m_im[j] = ell1c[j] * q[j] / w[j] - g_im[j] * pc[j] / w[j] + 1.5 * pc_z[j];
    }

    auto m_abs_15 = [](double xi) { return Complex(std::pow(std::abs(xi), 1.5)); };
    auto m_abs_05 = [](double xi) { return Complex(std::sqrt(std::abs(xi))); };
    auto m_isgn_05 = [](double xi) { return Complex(0.0, sgn(xi) * std::sqrt(std::abs(xi))); };
    auto m_abs_m05 = [](double xi) {
        double a = std::abs(xi);
        return Complex(a > 0.0 ? 1.0 / std::sqrt(a) : 0.0);
    };
    auto m_isgn_m05 = [](double xi) {
        double a = std::abs(xi);
        return Complex(0.0, a > 0.0 ? sgn(xi) / std::sqrt(a) : 0.0);
    };

    SymmetrizerSymbols out;
    out.q_slope = -mu;

    out.gamma.grid = grid;
    out.gamma.order = 1.5;
    out.gamma.terms.push_back({w, m_abs_15});
    out.gamma.terms.push_back({g_re, m_abs_05});
    out.gamma.terms.push_back({g_im, m_isgn_05});

    out.q.grid = grid;
    out.q.order = 0.0;
    out.q.terms.push_back({q, [](double) { return Complex(1.0); }});

    out.p.grid = grid;
    out.p.order = 0.5;
    out.p.terms.push_back({pc, m_abs_05});
    out.p.terms.push_back({p_m_re, m_abs_m05});
    out.p.terms.push_back({p_m_im, m_isgn_m05});
    return out;
}

RealField wave_packet(const GridPtr& grid, int carrier_mode) {
    const GridSpec& g = *grid;
    const double L = g.half_period();
    const double width = L / 8.0;
    const double xi_c = std::numbers::pi * carrier_mode / L;
    RealField u(grid);
    for (int j = 0; j < g.size(); ++j) {
        double z = g.node(j) - L;
        u[j] = std::exp(-z * z / (2.0 * width * width)) * std::cos(xi_c * (z + L));
    }
    return u;
}

SymmetrizerResidual symmetrizer_residual(const RealField& eta, const CutoffPair& cut,
                                         int probe_mode) {
    if (eta.grid()->index_of_mode(probe_mode) < 0)
        throw ConfigError("probe wavenumber not resolved on this grid");
    SymmetrizerSymbols sym = symmetrizer_symbols(eta);
    SeparableSymbol lambda = symbol_lambda(eta);
    EllSymbol ell = symbol_ell(eta);

    RealField u = wave_packet(eta.grid(), probe_mode);
    double base = l2_norm(u);

    RealField t_lam = paraop_apply(lambda, u, cut);
    RealField t_q = paraop_apply(sym.q, u, cut);
    RealField t_ell = paraop_apply(ell.ell, u, cut);
    RealField t_p = paraop_apply(sym.p, u, cut);

    RealField p_lam = paraop_apply(sym.p, t_lam, cut);
    RealField g_q = paraop_apply(sym.gamma, t_q, cut);
    RealField q_ell = paraop_apply(sym.q, t_ell, cut);
    RealField g_p = paraop_apply(sym.gamma, t_p, cut);

    SymmetrizerResidual r;
    r.r1 = l2_norm(p_lam - g_q) / base;
    r.r2 = l2_norm(q_ell - g_p) / base;
    r.t_p_lam = l2_norm(p_lam) / base;
    return r;
}

SeparableSymbol mollifier_symbol(const RealField& eta, double eps, int rank) {
    require_positive_radius(eta);
    if (eps < 0.0) throw ConfigError("mollifier strength must be nonnegative");
    const GridPtr& grid = eta.grid();
    RealField eta_z = derivative(eta);
    RealField w(grid);
    for (int j = 0; j < eta.size(); ++j)
        w[j] = 1.0 / (std::sqrt(2.0) * std::pow(1.0 + eta_z[j] * eta_z[j], 0.75));
    double wmin = min_value(w), wmax = max_value(w);

    SeparableSymbol s;
    s.grid = grid;
    s.order = 0.0;

    if (wmax - wmin < 1e-12 || eps == 0.0) {
        double w0 = 0.5 * (wmin + wmax);
        s.terms.push_back({RealField(grid, 1.0), [eps, w0](double xi) {
                               return Complex(std::exp(-eps * w0 * std::pow(std::abs(xi), 1.5)));
                           }});
        return s;
    }

    // Chebyshev interpolation of w -> exp(-eps w |xi|^{3/2}) on [wmin, wmax].
    const int T = rank;
    const double mid = 0.5 * (wmin + wmax), half = 0.5 * (wmax - wmin);
    std::vector<double> nodes(T), thetas(T);
    for (int sdx = 0; sdx < T; ++sdx) {
        thetas[sdx] = std::numbers::pi * (sdx + 0.5) / T;
        nodes[sdx] = mid + half * std::cos(thetas[sdx]);
    }
    for (int t = 0; t < T; ++t) {
        RealField cheb(grid);
        for (int j = 0; j < eta.size(); ++j) {
            double x = std::clamp((w[j] - mid) / half, -1.0, 1.0);
            cheb[j] = std::cos(t * std::acos(x));
        }
        auto mult = [eps, t, T, nodes, thetas](double xi) {
            double a = std::pow(std::abs(xi), 1.5);
            double acc = 0.0;
            for (int sdx = 0; sdx < T; ++sdx)
                acc += std::exp(-eps * nodes[sdx] * a) * std::cos(t * thetas[sdx]);
            return Complex(acc * (t == 0 ? 1.0 : 2.0) / T);
        };
        s.terms.push_back({std::move(cheb), std::move(mult)});
    }
    return s;
}

double mollifier_certify(const SeparableSymbol& approx, const RealField& eta, double eps) {
    const GridSpec& g = *eta.grid();
    RealField eta_z = derivative(eta);
    double worst = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        double w = 1.0 / (std::sqrt(2.0) * std::pow(1.0 + eta_z[j] * eta_z[j], 0.75));
        for (int k = 0; k < g.size(); ++k) {
            double xi = g.wavenumber(k);
            double exact = std::exp(-eps * w * std::pow(std::abs(xi), 1.5));
            double got = approx.eval(j, xi).real();
            worst = std::max(worst, std::abs(got - exact));
        }
    }
    return worst;
}

} // namespace cjet
