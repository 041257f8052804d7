// Generated by gen_oracles.py (mpmath, 40 digits). Do not edit.
#![allow(dead_code)]
pub const J50_AT_60: f64 = -0.13798273148535212;
pub const DJ50_AT_60: f64 = -0.0011110876724694527;
pub const J0_ZERO_1: f64 = 2.404825557695773;
pub const J50_ZERO_1: f64 = 57.116899160119175;
pub const J50_ZERO_2: f64 = 62.80769876483536;
pub const SPH_J1_AT_1: f64 = 0.3011686789397568;
pub const P32_AT_HALF: f64 = 5.625;
pub const F2_M10_K15: f64 = -0.06215389672787575;
pub const F3_M10_K14: f64 = -0.048547656236403745;
pub const ROOT2_M30: f64 = 38.64685861404457;
pub const ROOT2_M50: f64 = 60.032725792333274;
pub const BETA_M50: f64 = 0.18781632225351944;
pub const ROOT2_M100: f64 = 112.39051645036076;
pub const RELA1_M100: f64 = 1.8633446063704446e-15;
pub const H0_RE_AT_1: f64 = 0.7651976865579666;
pub const H0_IM_AT_1: f64 = 0.08825696421567696;
pub const NV_M50_HALF: f64 = 2.9541183528429584e-19;
pub const NU_M50_HALF: f64 = 1.2351720401336481e-40;
pub const RATIO_V_M50_HALF: f64 = 2.1377285852676412e-08;
pub const RATIO_U_M50_HALF: f64 = 2.9478325971226636e-14;
