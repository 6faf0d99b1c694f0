#include <stdio.h>
#include "unireal.h"

int main(int argc, char **argv) {
    UnirealProof *p = NULL;
    char *out = NULL;
    if (argc < 2 || unireal_proof_load(argv[1], &p) != UNIREAL_STATUS_OK) {
        fprintf(stderr, "load failed: %s\n", argc < 2 ? "no path" : unireal_last_error());
        return 1;
    }
    if (unireal_verify(p, "bounded", "bound = 3", &out) != UNIREAL_STATUS_OK) {
        fprintf(stderr, "verify failed: %s\n", unireal_last_error());
        return 1;
    }
    printf("%s\n", out);
    unireal_string_free(out);
    if (unireal_extract(p, "bogus", &out) != UNIREAL_STATUS_UNKNOWN_INTERPRETATION) {
        return 1;
    }
    printf("%s\n", unireal_last_error());
    unireal_proof_free(p);
    return 0;
}
