#include <math.h>
#include <stdio.h>
#include "sphere_filon.h"

static SfComplex one(double theta, double phi, void *user_data) {
    (void)theta;
    (void)phi;
    (void)user_data;
    SfComplex c = {1.0, 0.0};
    return c;
}

int main(void) {
    SfRule *rule = NULL;
    if (sf_rule_new(8, &rule) != SF_STATUS_OK) return 1;
    double w[9];
    if (sf_rule_weights(rule, w, 9) != SF_STATUS_OK) return 2;
    sf_rule_free(rule);
    double sum = 0.0;
    for (int i = 0; i < 9; i++) sum += w[i];
    if (fabs(sum - 2.0) > 1e-14) return 3;

    SfCubatureResult r;
    if (sf_cubature(one, NULL, 5, 10.0, &r) != SF_STATUS_OK) return 4;
    double exact = 4.0 * M_PI * sin(10.0) / 10.0;
    if (fabs(r.value.re - exact) > 1e-13) return 5;

    if (sf_rule_new(1, &rule) != SF_STATUS_INVALID_ARGUMENT) return 6;
    char msg[128];
    sf_last_error_message(msg, sizeof msg);
    printf("ok %.15f (%s)\n", r.value.re, msg);
    return 0;
}
