#include <math.h>
#include <stdio.h>
#include "distortion_risk.h"

int main(void) {
    DrSolver *s = NULL;
    DrStatus st = dr_solver_new("normal:0,1", "dualpower:5", 0.0, 1.0, 0.0, NAN, 2000, 0, &s);
    if (st != DR_STATUS_OK) {
        fprintf(stderr, "%s: %s\n", dr_status_name(st), dr_last_error_message());
        return 1;
    }
    double q[2000];
    DrResult r;
    st = dr_solve(s, &r, q, 2000);
    if (st != DR_STATUS_OK || r.regime != DR_REGIME_MOMENT_ONLY) return 2;
    printf("%.6f %.6f\n", r.value, q[1999]);
    st = dr_solve_at(s, 0.1, -1.0, &r, NULL, 0);
    if (st != DR_STATUS_INFEASIBLE) return 3;
    dr_solver_free(s);
    return 0;
}
