#pragma once

#include <optional>
#include <string>
#include <utility>

#include "qfib/polyring.hpp"

namespace qfib {

// Outcome of checking one identity instance: both sides and, on failure,
// the leading term of lhs - rhs.
struct IdentityReport {
    std::string identity;
    int n = 0;
    std::optional<int> m;
    int k = 0;
    std::string scheme;
    Polynomial lhs;
    Polynomial rhs;
    bool pass = false;
    std::optional<Monomial> witness;

    IdentityReport(std::string identity, int n, std::optional<int> m, int k, std::string scheme, Polynomial lhs,
                   Polynomial rhs)
        : identity(std::move(identity)), n(n), m(m), k(k), scheme(std::move(scheme)), lhs(std::move(lhs)),
          rhs(std::move(rhs)) {
        witness = first_difference(this->lhs, this->rhs);
        pass = !witness.has_value();
    }
};

inline std::string format_witness(const Monomial& m) {
    std::vector<Exponent> z = m.z;
    return format(Polynomial::monomial(static_cast<int>(z.size()), m.coeff, z, m.q));
}

// "PASS convolution n=4 m=3 k=3 scheme=maj-lp" plus the witness on failure.
inline std::string summary_line(const IdentityReport& r) {
    std::string line = (r.pass ? "PASS " : "FAIL ") + r.identity + " n=" + std::to_string(r.n);
    if (r.m) line += " m=" + std::to_string(*r.m);
    line += " k=" + std::to_string(r.k) + " scheme=" + r.scheme;
    if (r.witness) line += " witness=" + format_witness(*r.witness);
    return line;
}

}  // namespace qfib
