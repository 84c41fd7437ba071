#include <stdio.h>
#include "realquot.h"

int main(void) {
    RqArrangement *a = rq_arrangement_pencil(3);
    int64_t chi = 0;
    if (rq_arrangement_chi_quotient(a, false, &chi) != RQ_STATUS_OK) {
        fprintf(stderr, "%s\n", rq_last_error());
        return 1;
    }
    rq_arrangement_free(a);

    RqGraph *g = NULL;
    if (rq_graph_from_json("{", &g) != RQ_STATUS_INVALID_INPUT || rq_last_error() == NULL) {
        return 2;
    }
    char *json = NULL;
    RqStatus s = rq_certify(2, 2, true, true, true, true, &json);
    printf("chi=%lld certify=%d\n", (long long)chi, (int)s);
    rq_string_free(json);
    return 0;
}
