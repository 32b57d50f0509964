#include <stdio.h>
#include "llab.h"

int main(void) {
    LlabPoset *p = NULL;
    LlabPosetIdeal *j = NULL;
    LlabResolution *r = NULL;
    size_t ranks[8];
    size_t len = 0;
    char *summary = NULL;
    if (llab_poset_parse("elements: a b\ncovers: a<b", &p) != LLAB_STATUS_OK) return 1;
    if (llab_poset_ideal_new(p, 2, "1,2", &j) != LLAB_STATUS_OK) return 1;
    if (llab_resolution_new(j, &r) != LLAB_STATUS_OK) return 1;
    if (llab_resolution_ranks(r, ranks, 8, &len) != LLAB_STATUS_OK) return 1;
    if (llab_certify(j, "q", &summary) != LLAB_STATUS_OK) return 1;
    printf("%zu %zu %zu %s\n", len, ranks[0], ranks[1], summary);
    llab_string_free(summary);
    llab_resolution_free(r);
    llab_poset_ideal_free(j);
    llab_poset_free(p);
    return 0;
}
