/* The public header must compile as C and the library must link from C. */
#include <math.h>
#include <stdio.h>

#include "slepian/slepian.h"

int main(void) {
  sk_config* cfg = NULL;
  double s[2];
  if (sk_config_parse("[grid]\nn = 8\n", &cfg) != SK_OK) {
    fprintf(stderr, "%s\n", sk_last_error());
    return 1;
  }
  sk_config_free(cfg);
  if (sk_epsilon_schedule(0.1, 100.0, 2, s) != SK_OK || s[0] != 100.0) return 1;
  if (fabs(sk_mu(0.0) - 1.0) > 0.0) return 1;
  printf("%s\n", sk_version());
  return 0;
}
