#pragma once

#include <array>
#include <string>
#include <vector>

#include "landau/weights.hpp"

namespace landau {

// The weights depend on (|alpha|, |beta|) only and every side condition is a
// constraint on magnitudes, so splits are enumerated as magnitude profiles:
//   pair 0 = (|a|, |b|), pair 1 = (|a'|, |b'|), pair 2 = (|a''|, |b''|), pair 3 = (|a'''|, |b'''|).
namespace audit {

enum Var { A = 0, B, A1, B1, A2, B2, A3, B3, kVarCount };

struct Expr {
    std::array<int, kVarCount> coeff{};
    int constant = 0;
};

Expr var(Var v);
Expr operator+(Expr a, const Expr& b);
Expr operator-(Expr a, const Expr& b);
Expr operator+(Expr a, int k);
Expr operator-(Expr a, int k);
Expr operator*(int k, Expr a);

enum class Rel { LE, GE, EQ };

// lhs - rhs REL 0
struct Constraint {
    Expr diff;
    Rel rel;
};
Constraint le(const Expr& a, const Expr& b);
Constraint ge(const Expr& a, const Expr& b);
Constraint eq(const Expr& a, const Expr& b);

struct WeightTerm {
    int coeff;
    int pair;
};

// sum lhs coeff*omega(pair)  REL  sum rhs coeff*omega(pair) + rhs_const + rhs_delta*delta
struct Claim {
    std::vector<WeightTerm> lhs;
    std::vector<WeightTerm> rhs;
    Rational rhs_const{0};
    int rhs_delta = 0;
    Rel rel = Rel::GE;
};

struct CaseSpec {
    std::string proposition;
    std::string name;
    std::string condition;
    std::string claim_text;
    std::vector<Constraint> constraints;
    Claim claim;
};

// The full case table for the energy-estimate propositions.
const std::vector<CaseSpec>& proposition_cases();

}  // namespace audit

struct AuditViolation {
    std::string proposition;
    std::string name;
    std::array<int, audit::kVarCount> profile{};
    Rational lhs;
    Rational rhs;
};

struct AuditCaseResult {
    std::string proposition;
    std::string name;
    std::string condition;
    std::string claim;
    long long count = 0;
    bool has_slack = false;
    Rational min_slack{0};
};

struct AuditReport {
    double gamma = 0;
    Rational eta{0};
    Rational delta{0};
    int base = 0;
    int max_order = 0;
    std::vector<AuditCaseResult> cases;
    std::vector<AuditViolation> violations;
    long long total_cases = 0;
    long long total_violations = 0;

    bool passed() const { return total_violations == 0; }
};

// Largest magnitude a primed index may take during enumeration (claims may
// shift an index by up to two v-derivatives beyond the hierarchy order).
inline constexpr int kAuditPrimedSlack = 2;
inline constexpr std::size_t kAuditViolationListCap = 64;

AuditReport check_split_inequalities(const WeightHierarchy& h);
AuditReport check_split_inequalities(const WeightHierarchy& h, const std::vector<audit::CaseSpec>& cases);

}  // namespace landau
