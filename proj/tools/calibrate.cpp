// Calibration runner behind the frozen residual constants: prints, per
// family and per check, the measured max|residual| normalized by its grid
// power (dx^2 or dx^2 + dt^2) over the acceptance grid sequence. The frozen
// table in src/tolerances.cpp and the record in
// tests/fixtures/calibration.md come from this output.
#include <cstdio>

#include "freewave/verify.hpp"

using namespace freewave;

int main() {
    const double dxs[] = {2e-2, 1e-2, 5e-3};
    std::printf("%-28s %-13s %12s %12s %12s\n", "family", "check", "C(dx=2e-2)", "C(1e-2)",
                "C(5e-3)");
    for (const auto& entry : catalog()) {
        if (entry.tag == FamilyTag::delta_trap) continue;
        const PotentialFamily p = default_family(entry.tag);
        double c_cancel[3], c_cont[3], c_schro[3], c_liou[3];
        for (int i = 0; i < 3; ++i) {
            FamilyCheckConfig cfg;
            cfg.dx = dxs[i];
            cfg.tol_scale = 1e9;  // measure, never fail
            const FamilyVerification v = verify_family(p, cfg);
            const double dx2 = dxs[i] * dxs[i];
            const double dt = dxs[i] * dxs[i];
            const double dd = dx2 + dt * dt;
            for (const auto& c : v.checks) {
                if (c.name == "cancellation") c_cancel[i] = c.max_abs / dx2;
                if (c.name == "continuity") c_cont[i] = c.max_abs / dd;
                if (c.name == "schrodinger") c_schro[i] = c.max_abs / dd;
                if (c.name == "liouville") c_liou[i] = c.max_abs / dx2;
            }
        }
        std::printf("%-28s %-13s %12.4g %12.4g %12.4g\n", entry.name.c_str(), "cancellation",
                    c_cancel[0], c_cancel[1], c_cancel[2]);
        std::printf("%-28s %-13s %12.4g %12.4g %12.4g\n", entry.name.c_str(), "continuity",
                    c_cont[0], c_cont[1], c_cont[2]);
        std::printf("%-28s %-13s %12.4g %12.4g %12.4g\n", entry.name.c_str(), "schrodinger",
                    c_schro[0], c_schro[1], c_schro[2]);
        std::printf("%-28s %-13s %12.4g %12.4g %12.4g\n", entry.name.c_str(), "liouville",
                    c_liou[0], c_liou[1], c_liou[2]);
    }
    return 0;
}
