#include <stdio.h>
#include <string.h>
#include "sbp.h"

static int fail(const char *what) {
    fprintf(stderr, "%s: %s\n", what, sbp_last_error());
    return 1;
}

int main(int argc, char **argv) {
    if (argc < 3) return 2;
    SbpWorkspace *ws = NULL;
    if (sbp_workspace_load(argv[1], &ws) != SBP_STATUS_OK) return fail("load");
    SbpSemiBiproduct *sb = NULL;
    if (sbp_verify(ws, NULL, &sb) != SBP_STATUS_OK) return fail("verify");
    bool schreier = true;
    size_t order = 0;
    if (sbp_is_schreier(sb, &schreier) != SBP_STATUS_OK) return fail("schreier");
    if (sbp_semibiproduct_order(sb, &order) != SBP_STATUS_OK) return fail("order");
    SbpPseudoAction *pa = NULL;
    if (sbp_extract(sb, &pa) != SBP_STATUS_OK) return fail("extract");
    SbpSemiBiproduct *synthetic = NULL;
    if (sbp_synthesize(pa, &synthetic) != SBP_STATUS_OK) return fail("synthesize");
    size_t synthetic_order = 0;
    sbp_semibiproduct_order(synthetic, &synthetic_order);
    printf("order=%zu schreier=%d synthetic=%zu\n", order, schreier, synthetic_order);

    SbpWorkspace *sign = NULL;
    SbpSemiBiproduct *none = NULL;
    if (sbp_workspace_load(argv[2], &sign) != SBP_STATUS_OK) return fail("load sign");
    SbpStatus st = sbp_verify(sign, NULL, &none);
    printf("sign=%d %s\n", (int)st, sbp_last_error());

    char *lines = NULL;
    if (sbp_enumerate_actions_jsonl(NULL, "Z2", "Z2", 0, &lines) != SBP_STATUS_OK) return fail("enumerate");
    size_t count = 0;
    for (const char *c = lines; *c; c++) count += *c == '\n';
    printf("lines=%zu\n", count);

    sbp_string_free(lines);
    sbp_workspace_free(sign);
    sbp_semibiproduct_free(synthetic);
    sbp_pseudo_action_free(pa);
    sbp_semibiproduct_free(sb);
    sbp_workspace_free(ws);
    return 0;
}
