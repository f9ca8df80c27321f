/* Reads A1 over Q, checks that R = [[1,2],[0,0]] is a Reynolds operator of
 * weight 1 and prints the coboundary coproduct of r = [[1,1],[1,0]]. */
#include <stdio.h>

#include "rlk.h"

static const char *A1 = "{\"field\":\"Q\",\"dim\":2,\"brackets\":[{\"i\":2,\"j\":2,\"v\":[\"1\",\"0\"]}]}";
static const char *OP = "{\"rows\":2,\"cols\":2,\"entries\":[[\"1\",\"2\"],[\"0\",\"0\"]]}";
static const char *R = "{\"rows\":2,\"cols\":2,\"entries\":[[\"1\",\"1\"],[\"1\",\"0\"]]}";

int main(void) {
    RlkAlgebra *alg = NULL;
    RlkMatrix *op = NULL, *r = NULL;
    char *delta = NULL;
    int code = 1;

    if (rlk_algebra_from_json(A1, &alg) != RLK_OK || rlk_matrix_from_json(alg, OP, &op) != RLK_OK ||
        rlk_matrix_from_json(alg, R, &r) != RLK_OK) {
        fprintf(stderr, "load failed: %s\n", rlk_last_error());
        goto done;
    }
    if (rlk_check_reynolds(alg, "1", op) != RLK_OK) {
        fprintf(stderr, "not a Reynolds operator\n");
        goto done;
    }
    if (rlk_coboundary(alg, r, &delta) != RLK_OK) {
        fprintf(stderr, "coboundary failed: %s\n", rlk_last_error());
        goto done;
    }
    printf("%s\n", delta);
    code = 0;

done:
    rlk_string_free(delta);
    rlk_matrix_free(r);
    rlk_matrix_free(op);
    rlk_algebra_free(alg);
    return code;
}
