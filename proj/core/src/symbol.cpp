#include "hyperdecay/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hyperdecay/error.hpp"
#include "hyperdecay/polyroots.hpp"

namespace hyperdecay {

OperatorSymbol::OperatorSymbol(int n, std::vector<SparsePoly> tau_coeffs)
    : n_(n), m_(static_cast<int>(tau_coeffs.size())), coeffs_(std::move(tau_coeffs)) {
    if (n_ < 1) throw ContractViolation("spatial dimension must be >= 1");
    if (m_ < 1) throw ContractViolation("symbol order must be >= 1");
    principal_.reserve(coeffs_.size());
    for (int j = 1; j <= m_; ++j) {
        SparsePoly& p = coeffs_[static_cast<std::size_t>(j - 1)];
        if (p.dim() != n_) {
            if (!p.is_zero())
                throw ContractViolation("coefficient p_" + std::to_string(j) + " has wrong dimension");
            p = SparsePoly(n_);
        }
        if (p.degree() > j)
            throw ContractViolation("coefficient p_" + std::to_string(j) + " has degree " +
                                    std::to_string(p.degree()) + " > " + std::to_string(j));
        SparsePoly h = p.homogeneous_part(j);
        if (!h.has_real_coefficients(0.0))
            throw ContractViolation("principal part of p_" + std::to_string(j) + " has non-real coefficients");
        principal_.push_back(std::move(h));
    }
}

const SparsePoly& OperatorSymbol::coeff(int j) const {
    if (j < 1 || j > m_) throw ContractViolation("coefficient index out of range");
    return coeffs_[static_cast<std::size_t>(j - 1)];
}

const SparsePoly& OperatorSymbol::principal(int j) const {
    if (j < 1 || j > m_) throw ContractViolation("coefficient index out of range");
    return principal_[static_cast<std::size_t>(j - 1)];
}

bool OperatorSymbol::operator==(const OperatorSymbol& o) const {
    if (n_ != o.n_ || m_ != o.m_) return false;
    for (int j = 0; j < m_; ++j)
        if (coeffs_[static_cast<std::size_t>(j)].terms() != o.coeffs_[static_cast<std::size_t>(j)].terms())
            return false;
    return true;
}

std::string OperatorSymbol::to_string() const {
    std::ostringstream os;
    os << "tau^" << m_;
    for (int j = 1; j <= m_; ++j) {
        const SparsePoly& p = coeff(j);
        if (p.is_zero()) continue;
        os << " + (" << p.to_string() << ")";
        if (m_ - j > 0) os << "*tau^" << (m_ - j);
    }
    return os.str();
}

cplx horner(std::span<const cplx> coeffs, cplx z) {
    cplx s = 0.0;
    for (cplx c : coeffs) s = s * z + c;
    return s;
}

std::vector<cplx> tau_poly_at(const OperatorSymbol& sym, std::span<const double> xi) {
    if (static_cast<int>(xi.size()) != sym.dim())
        throw ContractViolation("xi has length " + std::to_string(xi.size()) + ", symbol dimension is " +
                                std::to_string(sym.dim()));
    std::vector<cplx> c(static_cast<std::size_t>(sym.order()) + 1);
    c[0] = 1.0;
    for (int j = 1; j <= sym.order(); ++j) c[static_cast<std::size_t>(j)] = sym.coeff(j)(xi);
    return c;
}

std::vector<cplx> principal_poly_at(const OperatorSymbol& sym, std::span<const double> xi) {
    if (static_cast<int>(xi.size()) != sym.dim()) throw ContractViolation("xi dimension mismatch");
    std::vector<cplx> c(static_cast<std::size_t>(sym.order()) + 1);
    c[0] = 1.0;
    for (int j = 1; j <= sym.order(); ++j) c[static_cast<std::size_t>(j)] = sym.principal(j)(xi);
    return c;
}

cplx eval_symbol(const OperatorSymbol& sym, cplx tau, std::span<const double> xi) {
    auto c = tau_poly_at(sym, xi);
    return horner(c, tau);
}

int default_num_directions(int n) {
    switch (n) {
        case 1: return 64;
        case 2: return 256;
        default: return 1024;
    }
}

std::vector<std::vector<double>> unit_directions(int n, int count) {
    if (n < 1 || count < 1) throw ContractViolation("unit_directions needs n >= 1 and count >= 1");
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(count));
    const double pi = std::numbers::pi;
    for (int k = 0; k < count; ++k) {
        std::vector<double> w(static_cast<std::size_t>(n));
        if (n == 1) {
            w[0] = (k % 2 == 0) ? 1.0 : -1.0;
        } else if (n == 2) {
            double a = 2.0 * pi * (k + 0.5) / count;
            w[0] = std::cos(a);
            w[1] = std::sin(a);
        } else if (n == 3) {
            double golden = pi * (3.0 - std::sqrt(5.0));
            double z = 1.0 - 2.0 * (k + 0.5) / count;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            w[0] = r * std::cos(golden * k);
            w[1] = r * std::sin(golden * k);
            w[2] = z;
        } else {
            // radical-inverse points mapped to the sphere by normalization
            static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
            double s2 = 0.0;
            for (int j = 0; j < n; ++j) {
                int b = primes[j % 12];
                double f = 1.0, r = 0.0;
                for (int i = k + 1; i > 0; i /= b) {
                    f /= b;
                    r += f * (i % b);
                }
                w[static_cast<std::size_t>(j)] = 2.0 * r - 1.0 + 1e-3 * (j + 1);
                s2 += w[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
            }
            for (double& v : w) v /= std::sqrt(s2);
        }
        out.push_back(std::move(w));
    }
    return out;
}

HyperbolicityCheck check_strict_hyperbolicity(const OperatorSymbol& sym, int num_directions, double tol) {
    if (num_directions == 0) num_directions = default_num_directions(sym.dim());
    if (num_directions < 1) throw ContractViolation("num_directions must be >= 1");
    HyperbolicityCheck res;
    res.min_gap = std::numeric_limits<double>::infinity();
    for (const auto& w : unit_directions(sym.dim(), num_directions)) {
        auto c = principal_poly_at(sym, w);
        RootSet rs = roots_at(c, w);
        double gap = std::numeric_limits<double>::infinity();
        double im = 0.0;
        for (std::size_t a = 0; a < rs.roots.size(); ++a) {
            im = std::max(im, std::abs(rs.roots[a].imag()));
            for (std::size_t b = a + 1; b < rs.roots.size(); ++b)
                gap = std::min(gap, std::abs(rs.roots[a] - rs.roots[b]));
        }
        res.max_abs_imag = std::max(res.max_abs_imag, im);
        bool bad = im > tol || gap <= tol;
        if (bad && res.strictly_hyperbolic) {
            res.strictly_hyperbolic = false;
            res.worst_direction = w;
        }
        if (gap < res.min_gap) {
            res.min_gap = gap;
            if (res.strictly_hyperbolic) res.worst_direction = w;
        }
    }
    if (sym.order() == 1) res.min_gap = std::numeric_limits<double>::infinity();
    return res;
}

double euclidean_norm(std::span<const double> xi) {
    double s = 0.0;
    for (double v : xi) s += v * v;
    return std::sqrt(s);
}

double japanese_bracket(std::span<const double> xi) {
    double s = 1.0;
    for (double v : xi) s += v * v;
    return std::sqrt(s);
}

}  // namespace hyperdecay
