/* cc -I include examples/smoke.c ../../target/debug/libposetlab_ffi.a -lpthread -ldl -lm */
#include <stdio.h>
#include "posetlab.h"

int main(void) {
    PlGraph *g = NULL;
    if (pl_graph_parse("theta", &g) != PL_STATUS_OK) {
        fprintf(stderr, "%s\n", pl_last_error());
        return 1;
    }
    PlPoset *x = NULL;
    PlHomology *h = NULL;
    size_t b0 = 0;
    pl_poset_build(g, PL_POSET_KIND_X, &x);
    pl_homology_compute(x, &h);
    pl_homology_betti(h, 0, &b0);
    printf("posetlab %s: b0(X(theta)) = %zu\n", pl_version(), b0);
    pl_homology_free(h);
    pl_poset_free(x);
    pl_graph_free(g);
    return b0 == 2 ? 0 : 1;
}
