#include "minkmom/negative.hpp"

#include "minkmom/asymptotics.hpp"
#include "minkmom/special.hpp"

#include <stdexcept>

namespace minkmom {

TriangularMatrixPair matrix_pair(std::size_t d) {
    if (d < 1)
        throw std::invalid_argument("matrix_pair: size must be >= 1");
    TriangularMatrixPair p;
    p.size = d;
    const auto gamma = gamma_int_table(static_cast<unsigned>(d - 1));
    p.a.assign(d, std::vector<BigInt>(d, BigInt(0)));
    p.b.assign(d, std::vector<BigInt>(d, BigInt(0)));
    for (std::size_t i = 0; i < d; ++i) {
        BigInt binom = 1;
        for (std::size_t j = 0; j <= i; ++j) {
            p.a[i][j] = binom * gamma[i - j];
            p.b[i][j] = (i == j) ? BigInt(1)
                                 : BigInt(((i + j) % 2 == 0) ? 2 : -2) * binom;
            binom *= static_cast<unsigned long>(i - j);
            binom /= static_cast<unsigned long>(j) + 1;
        }
    }
    // both products must be the identity, exactly
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            BigInt ab = 0, ba = 0;
            for (std::size_t k = j; k <= i; ++k) {
                ab += p.a[i][k] * p.b[k][j];
                ba += p.b[i][k] * p.a[k][j];
            }
            const BigInt expect = (i == j) ? 1 : 0;
            if (ab != expect || ba != expect)
                throw std::logic_error("matrix_pair: A and B are not mutually inverse");
        }
    return p;
}

Real m_negative(unsigned n, const MomentVector& m) {
    if (static_cast<int>(n) > m.order())
        throw std::invalid_argument("m_negative: n exceeds the available order");
    PrecisionScope scope(m.ctx());
    const auto gamma = gamma_int_table(n);
    Real acc = 0;
    BigInt binom = 1;
    for (unsigned k = 0; k <= n; ++k) {
        acc += Real(binom * gamma[n - k]) * m.values[k];
        binom *= n - k;
        binom /= k + 1;
    }
    return acc;
}

std::vector<Real> m_negative_table(unsigned max_n, const MomentVector& m) {
    std::vector<Real> out;
    out.reserve(max_n + 1);
    for (unsigned n = 0; n <= max_n; ++n)
        out.push_back(m_negative(n, m));
    return out;
}

ReconstructedMoment m_positive_from_negative(unsigned n, const std::vector<Real>& negatives) {
    if (negatives.size() <= n)
        throw std::invalid_argument("m_positive_from_negative: need m_0..m_-n");
    ReconstructedMoment r;
    r.value = negatives[n];
    Real max_term = abs(r.value);
    BigInt binom = 1; // C(n, k)
    for (unsigned k = 0; k < n; ++k) {
        Real term = 2 * Real(binom) * negatives[k];
        if (((n + k) % 2) != 0)
            term = -term;
        r.value += term;
        if (abs(term) > max_term)
            max_term = abs(term);
        binom *= n - k;
        binom /= k + 1;
    }
    if (max_term > 0 && !r.value.is_zero()) {
        Real lost = log10(max_term / abs(r.value));
        r.cancellation_digits = mpfr_get_d(lost.backend().data(), MPFR_RNDN);
    }
    r.cancellation_warning = n > 25;
    return r;
}

namespace {

// sum_{j>N} C(n+j-1, j) m^_j with m^_j = lambda S_int(j), summed until the
// terms stop mattering
Real identity_tail(unsigned n, unsigned order, const Real& lambda,
                   const std::vector<Real>& sint, const Real& target) {
    Real tail = 0;
    Real b = 1; // C(n+j-1, j) rebuilt incrementally from j = 0
    for (unsigned j = 1; j <= order; ++j) {
        b *= n + j - 1;
        b /= j;
    }
    for (unsigned j = order + 1; j < sint.size(); ++j) {
        b *= n + j - 1;
        b /= j;
        Real term = b * lambda * to_working(sint[j]);
        tail += term;
        if (term < target)
            break;
    }
    return tail;
}

} // namespace

IdentityReport identity_suite(const MomentVector& m, const Real& lambda) {
    const PrecisionContext ctx = m.ctx();
    PrecisionScope scope(ctx);
    const unsigned N = static_cast<unsigned>(m.order());
    const Real target = ctx.truncation_target();
    const unsigned horizon = N + 8 * (m.digits + 10) + N / 2;
    std::vector<Real> sint = S_integral_table(horizon, PrecisionContext(m.digits, 10));

    IdentityReport rep;
    const auto gamma = gamma_int_table(4);
    for (unsigned n = 1; n <= 4; ++n) {
        IdentityRow row;
        row.n = n;
        Real lhs = 0;
        BigInt binom = 1;
        for (unsigned k = 0; k <= n; ++k) {
            lhs += Real(binom * gamma[n - k]) * m.values[k];
            binom *= n - k;
            binom /= k + 1;
        }
        Real rhs = 0;
        Real b = 1;
        for (unsigned j = 0; j <= N; ++j) {
            if (j > 0) {
                b *= n + j - 1;
                b /= j;
            }
            rhs += b * m.values[j];
        }
        row.lhs = lhs;
        row.rhs = rhs;
        row.tail = identity_tail(n, N, lambda, sint, target);
        row.residual = lhs - (rhs + row.tail);
        rep.rows.push_back(std::move(row));
    }

    // sum m_j = 5/2
    {
        Real s = 0;
        for (unsigned j = 0; j <= N; ++j)
            s += m.values[j];
        rep.sum_tail = identity_tail(1, N, lambda, sint, target);
        rep.sum_residual = s + rep.sum_tail - Real(5) / 2;
    }
    // sum j m_j = m_2 + 11/2
    {
        Real s = 0;
        for (unsigned j = 1; j <= N; ++j)
            s += j * m.values[j];
        Real t2 = identity_tail(2, N, lambda, sint, target); // sum (j+1) m_j tail
        Real t1 = identity_tail(1, N, lambda, sint, target);
        rep.weighted_tail = t2 - t1;
        rep.weighted_residual = s + rep.weighted_tail - m.values[2] - Real(11) / 2;
    }
    return rep;
}

Real asymptotic_negative(unsigned n, const Real& lambda, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    const Real l2 = log2_value();
    Real fact = 1;
    for (unsigned j = 2; j <= n; ++j)
        fact *= j;
    return lambda * fact / pow(l2, static_cast<int>(n) + 1);
}

} // namespace minkmom
