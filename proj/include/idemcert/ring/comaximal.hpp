#ifndef IDEMCERT_RING_COMAXIMAL_HPP
#define IDEMCERT_RING_COMAXIMAL_HPP

#include <vector>

#include <idemcert/ring/certificate.hpp>

namespace idemcert
{

/// Elements s_i with coefficients c_i and a certificate for sum c_i s_i - 1.
struct ComaximalityData
{
    std::vector<Poly> s, c;
    MembershipCertificate cert;

    Poly combination() const
    {
        Poly acc;
        for (std::size_t i = 0; i < s.size(); ++i)
            acc += c[i] * s[i];
        return acc;
    }

    bool verify(const RingPresentation &pres) const
    {
        return s.size() == c.size() && cert.target == combination() - Poly(1) && verify_membership(cert, pres);
    }

    /// Exact data: the combination is 1 as a polynomial.
    static ComaximalityData exact(std::vector<Poly> s, std::vector<Poly> c)
    {
        ComaximalityData d{std::move(s), std::move(c), {}};
        d.cert = MembershipCertificate{d.combination() - Poly(1), {}};
        return d;
    }
};

} // namespace idemcert

#endif // IDEMCERT_RING_COMAXIMAL_HPP
