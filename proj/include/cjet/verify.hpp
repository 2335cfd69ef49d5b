#ifndef CJET_VERIFY_HPP
#define CJET_VERIFY_HPP

#include <string>
#include <vector>

namespace cjet::verify {

struct SubCheck {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool upper_bound = true; // pass iff measured <= threshold (else >=)
    bool pass = false;
};

struct CheckResult {
    int id = 0;
    std::string suite;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::vector<SubCheck> checks;
};

CheckResult criterion_bessel();      // 1: Bessel inequality lattices
CheckResult criterion_dn_flat();     // 2: DN flat oracle + order
CheckResult criterion_shape();       // 3: shape-derivative consistency
CheckResult criterion_energy();      // 4: Hamiltonian conservation
CheckResult criterion_dispersion();  // 5: Rayleigh-Plateau rates
CheckResult criterion_jacobian();    // 6: Jacobian-dispersion equivalence
CheckResult criterion_gravity();     // 7: gravity-frame equivalence
CheckResult criterion_paradiff();    // 8: paradifferential identity suite
CheckResult criterion_paralin();     // 9: paralinearization smoothing

/// suite: one of bessel, dno, shape, energy, dispersion, gravity, paradiff, all.
std::vector<CheckResult> run_suite(const std::string& suite);

std::string format_result_line(const CheckResult& r);

} // namespace cjet::verify

#endif
