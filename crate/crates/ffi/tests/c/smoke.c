#include <stdio.h>
#include <math.h>
#include "primlattice.h"

int main(void) {
    PlForm *q0 = NULL;
    if (pl_form_parse("1,sqrt(2),sqrt(3)", &q0) != PL_STATUS_OK) return 10;

    PlCount count;
    if (pl_count(q0, 1000.0, 0, &count) != PL_STATUS_OK) return 11;
    if (count.all != 2833 || count.primitive != 1716) return 12;

    PlBoundReport report;
    if (pl_k0_lower_bound(q0, 1, 1000.0, &report) != PL_STATUS_OK) return 13;
    if (!report.valid || fabs(report.f1_abs - 0.422182) > 1e-5) return 14;

    PlForm *bad = NULL;
    if (pl_form_new(1.0, 3.0, 1.0, &bad) != PL_STATUS_DOMAIN || bad != NULL) return 15;
    char msg[256];
    size_t n = pl_last_error_message(msg, sizeof msg);
    if (n == 0) return 16;

    pl_form_free(q0);
    printf("ok %llu %llu %.6f\n", (unsigned long long)count.all, (unsigned long long)count.primitive, report.k0_lower);
    return 0;
}
