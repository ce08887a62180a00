#include <stdio.h>
#include "hopcut.h"

int main(void) {
    uint32_t src[] = {0, 1, 2, 3};
    uint32_t dst[] = {1, 2, 3, 4};
    HcGraph *g = NULL;
    if (hc_graph_from_edges(5, src, dst, NULL, 4, &g) != HC_STATUS_OK) return 1;
    HcAugment *h = NULL;
    if (hc_build_shortcut(g, HC_PRESET_DESK, 7, true, &h) != HC_STATUS_OK) return 2;
    HcVerifyResult r;
    if (hc_verify_shortcut(g, h, &r) != HC_STATUS_OK || !r.ok) return 3;
    uint8_t mask[5];
    size_t count = 0;
    if (hc_reach(g, h, 0, mask, 5, &count) != HC_STATUS_OK || count != 5) return 4;
    HcGraph *bad = NULL;
    uint32_t far[] = {9};
    if (hc_graph_from_edges(2, src, far, NULL, 1, &bad) != HC_STATUS_INVALID_ARGUMENT) return 5;
    char msg[128];
    if (hc_last_error_message(msg, sizeof msg) == 0) return 6;
    printf("beta=%u size=%zu\n", r.beta_meas, r.size_h);
    hc_augment_free(h);
    hc_graph_free(g);
    return 0;
}
