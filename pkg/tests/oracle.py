"""Reference values from tools/oracle_values.py (mpmath, 40 digits)."""

ORACLE = {
    'gamma_3/4-i': (0.4266835097619315+0.2904404322116911j),
    'gamma_1/4+2.5i': (0.03250695626384157-0.022134168909376934j),
    'gamma_-2.5+0.5i': (-0.33387520352243233-0.20645730796360842j),
    'hyp1f1_1/4-i_1/2_5i': (-16.307961482477587+12.182410849919995j),
    'hyp1f1_3/4+0.5i_3/2_50i': (0.02062263989556751-0.002753667008554112j),
    'hyp1f1_1/4+1.5i_1/2_150i': (-0.06566773632485941+0.027626479097005694j),
    'hyp1f1_3/4-2.5i_3/2_199i': (-12.615826877330031+21.054433798273266j),
    's_even_0': 1.4464090846320772,
    's_odd_0': 0.6913673390362933,
    's_even_-2': 0.2098620567196562,
    's_odd_-2': 0.29120844275157765,
    'U_even_a-2_u1': (-0.006197525664606796-1.5921046575033438e-44j),
    'U_odd_a-2_u1': (0.14214301134870955+4.3285258015474195e-43j),
    'U_odd_a-2_u-3.7': (-0.10454542094693381+3.1259345983156116e-43j),
    'V_even_a-2_v2.5': (3.347782651201444+6.462720964351313e-42j),
    'dU_even_a-2_u1': (-0.33978940244721745+9.2220782899631e-54j),
    'dU_odd_a-2_u2': (-0.24693805786601766+4.33649952230929e-53j),
    'psi_odd_xy': (0.180355738030458+1.8581821604985153e-42j),
    'psi_x_odd_xy': (-0.1020734410877813+8.927783366890218e-52j),
    'psi_y_odd_xy': (0.022108152024371656-3.437856850836089e-52j),
}
K_PERP_REF = 0.6275326410661564
