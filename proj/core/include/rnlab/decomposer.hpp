#pragma once

// Writes x + sqrt(-D) as beta^k * mu for a solution of x^2 + D = p^n m, given
// a base solution x0^2 + D = p^n0, and audits the inequality chain that turns
// the decomposition into a lower bound on m.

#include <string>

#include "rnlab/certifier.hpp"
#include "rnlab/numeric.hpp"
#include "rnlab/quadring.hpp"

namespace rnlab {

enum class Branch { Plus, Minus };
std::string to_string(Branch branch);

struct Decomposition {
  Int D, p, x0, x;
  unsigned long n0 = 0;
  unsigned long n = 0;
  unsigned j = 0;
  unsigned k = 0;
  unsigned long l = 0;
  Branch branch = Branch::Plus;
  int sign = 1;      // beta^k mu - conj(beta)^k conj(mu) = sign * lambda
  QuadInt beta;      // x0 + sqrt(-D), or halved for p = 2
  QuadInt gamma;     // x + sqrt(-D), or halved for p = 2
  QuadInt lambda;    // beta - conj(beta)
  QuadInt mu;        // beta^k mu is gamma (plus) or conj(gamma) (minus)
  Int m;             // (x^2 + D) / p^n
};

/// Throws PreconditionFail when the inputs do not describe a valid pair of
/// solutions with n > 5 n0, NeitherBranch / AmbiguousBranch when the division
/// pattern contradicts the ideal factorization, IdentityViolation when the
/// assembled identities fail.
Decomposition decompose(const Int& D, const Int& p, const Int& x0, unsigned long n0, const Int& x, unsigned long n);

struct ChainAudit {
  unsigned j = 0;
  unsigned g = 0;
  unsigned r = 0;
  bool pade_identity = false;     // beta^k P - conj(beta)^k Q = E
  bool combined_identity = false; // beta^k (Q mu - P conj(mu)) = sign Q lambda - E conj(mu)
  bool nonzero = false;           // Q mu - P conj(mu) != 0
  Int difference_norm;            // norm(Q mu - P conj(mu))
  bool chain_holds = false;       // |beta|^k <= |Q||lambda| + |E||mu|
  double chain_log10_margin = 0.0;
  bool final_bound = false;       // m * p^gap >= |mu|^2
  unsigned long p_pow_gap = 0;    // 5 n0 - 1 (odd p), 5 (n0 - 2) - 1 (p = 2)
  // Remarks that the argument only needs for large j; reported, not asserted.
  bool nine_tenths = false;       // |Q||lambda| < 9/10 |beta|^k
  bool point_seven = false;       // |beta^k mu| > 0.7 x
};

/// Audits one choice of g in {0, 1}.
ChainAudit audit_chain(const HugeSolutionCertificate& cert, const Decomposition& dec, unsigned g);

struct ChainAuditPair {
  ChainAudit g0;
  ChainAudit g1;
};

/// Both g; throws BothBranchesVanish when Q mu - P conj(mu) is zero for both.
ChainAuditPair audit_both(const HugeSolutionCertificate& cert, const Decomposition& dec);

}  // namespace rnlab
