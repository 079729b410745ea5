#include <stdio.h>
#include "entcount.h"

int main(void) {
    EcGraph *g = NULL;
    char *s = NULL;
    if (ec_graph_named("k_dd:3", &g) != EC_OK) {
        fprintf(stderr, "%s\n", ec_last_error());
        return 2;
    }
    if (ec_colorings(g, 3, &s) != EC_OK) {
        fprintf(stderr, "%s\n", ec_last_error());
        return 2;
    }
    printf("%s\n", s);
    ec_string_free(s);
    ec_graph_free(g);
    return 0;
}
