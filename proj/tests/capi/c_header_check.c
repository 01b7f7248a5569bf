/* The public header must compile as C. */
#include <stdio.h>

#include "skybus/skybus.h"

int main(void) {
    skb_material m;
    skb_skyrmion s;
    skb_system* sys = NULL;
    double r_c = 0.0;
    skb_material_default(&m);
    skb_skyrmion_default(&s);
    if (skb_system_create(&m, &s, &sys) != SKB_OK) return 1;
    if (skb_gyration_radius(sys, &r_c) != SKB_OK) return 1;
    skb_system_destroy(sys);
    printf("skybus %s r_c = %.6e m\n", skb_version(), r_c);
    return r_c > 0.0 ? 0 : 1;
}
