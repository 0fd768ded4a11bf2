//! Coordinates published for the zeros of Θ_{Γ_{8k}} and of `p_{2k}`.
//!
//! Values are as printed (five or six significant digits, except for
//! `k = 25`, which was printed at full double precision).

/// Heights of the 20 zeros of `Θ_{Γ_{480}}` (`k = 60`) on `Re τ = 1/2`, highest first.
pub const REFERENCE_HEIGHTS_K60: [f64; 20] = [
    2.04207, 1.69236, 1.52974, 1.42261, 1.34258, 1.27866, 1.22543, 1.17981, 1.1399, 1.10441,
    1.07247, 1.04341, 1.01676, 0.99214, 0.969265, 0.947899, 0.92785, 0.908964, 0.891108, 0.874333,
];

/// Roots of `p_{20}` (`k = 10`) as `(re, im)`, with repeats for multiplicity.
pub const REFERENCE_ROOTS_K10: [(f64, f64); 18] = [
    (0.5, 0.866025),
    (0.5, -0.866025),
    (0.5, -2.08265),
    (0.5, 2.08265),
    (0.5, -1.2067),
    (0.5, 1.2067),
    (0.293062, 0.707276),
    (0.706938, -0.707276),
    (0.293062, -0.707276),
    (0.706938, 0.707276),
    (0.108993, 0.45399),
    (0.891007, -0.45399),
    (0.108993, -0.45399),
    (0.891007, 0.45399),
    (0.0123117, 0.156434),
    (0.987688, -0.156434),
    (0.0123117, -0.156434),
    (0.987688, 0.156434),
];

/// Roots of `p_{50}` (`k = 25`) as `(re, im)`, with repeats for multiplicity.
pub const REFERENCE_ROOTS_K25: [(f64, f64); 44] = [
    (0.5, 0.8660254037844386),
    (0.5, -0.8660254037844386),
    (0.5, -2.236871414605777),
    (0.5, 2.236871414605777),
    (0.5, -1.7210112883346231),
    (0.5, 1.7210112883346231),
    (0.5, -1.3888034268047544),
    (0.5, 1.3888034268047544),
    (0.5, -1.1554321432952352),
    (0.5, 1.1554321432952352),
    (0.5, -0.9811093281559106),
    (0.5, 0.9811093281559106),
    (0.4123454533856929, 0.809111941478763),
    (0.587654546614307, -0.809111941478763),
    (0.4123454533856929, -0.809111941478763),
    (0.587654546614307, 0.809111941478763),
    (0.31545274857681005, 0.7289684907929533),
    (0.68454725142319, -0.7289684907929533),
    (0.31545274857681005, -0.7289684907929533),
    (0.68454725142319, 0.7289684907929533),
    (0.22948675726889445, 0.637423989802703),
    (0.7705132427311056, -0.637423989802703),
    (0.22948675726889445, -0.637423989802703),
    (0.7705132427311056, 0.637423989802703),
    (0.15567207449798265, 0.535826794978993),
    (0.8443279255020173, -0.535826794978993),
    (0.15567207449798265, -0.535826794978993),
    (0.8443279255020173, 0.535826794978993),
    (0.09517294753398042, 0.42577929156507255),
    (0.9048270524660196, -0.42577929156507255),
    (0.09517294753398042, -0.42577929156507255),
    (0.9048270524660196, 0.42577929156507255),
    (0.04894348370484647, 0.30901699437494734),
    (0.9510565162951535, -0.30901699437494734),
    (0.04894348370484647, -0.30901699437494734),
    (0.9510565162951535, 0.30901699437494734),
    (0.01771274927131128, 0.18738131458572463),
    (0.9822872507286887, -0.18738131458572463),
    (0.01771274927131128, -0.18738131458572463),
    (0.9822872507286887, 0.18738131458572463),
    (0.001973271571728441, 0.06279051952931339),
    (0.9980267284282716, -0.06279051952931339),
    (0.001973271571728441, -0.06279051952931339),
    (0.9980267284282716, 0.06279051952931339),
];

/// Roots of `p_{100}` (`k = 50`) as `(re, im)`, with repeats for multiplicity.
pub const REFERENCE_ROOTS_K50: [(f64, f64); 90] = [
    (0.5, 0.866025),
    (0.5, 0.866025),
    (0.5, -0.866025),
    (0.5, -0.866025),
    (0.5, -2.86487),
    (0.5, 2.86487),
    (0.5, -2.41441),
    (0.5, 2.41441),
    (0.5, -2.08265),
    (0.5, 2.08265),
    (0.5, -1.82769),
    (0.5, 1.82769),
    (0.5, -1.62528),
    (0.5, 1.62528),
    (0.5, -1.46038),
    (0.5, 1.46038),
    (0.5, -1.32321),
    (0.5, 1.32321),
    (0.5, -1.20711),
    (0.5, 1.20711),
    (0.5, -1.10738),
    (0.5, 1.10738),
    (0.5, -1.02063),
    (0.5, 1.02063),
    (0.5, -0.944351),
    (0.5, 0.944351),
    (0.437906, 0.827073),
    (0.562094, -0.827073),
    (0.437906, -0.827073),
    (0.562094, 0.827073),
    (0.387093, 0.790155),
    (0.612907, -0.790155),
    (0.387093, -0.790155),
    (0.612907, 0.790155),
    (0.338688, 0.750111),
    (0.661312, -0.750111),
    (0.338688, -0.750111),
    (0.661312, 0.750111),
    (0.292893, 0.707107),
    (0.707107, -0.707107),
    (0.292893, -0.707107),
    (0.707107, 0.707107),
    (0.249889, 0.661312),
    (0.750111, -0.661312),
    (0.249889, -0.661312),
    (0.750111, 0.661312),
    (0.209845, 0.612907),
    (0.790155, -0.612907),
    (0.209845, -0.612907),
    (0.790155, 0.612907),
    (0.172919, 0.562083),
    (0.827081, -0.562083),
    (0.172919, -0.562083),
    (0.827081, 0.562083),
    (0.139258, 0.509041),
    (0.860742, -0.509041),
    (0.139258, -0.509041),
    (0.860742, 0.509041),
    (0.108993, 0.45399),
    (0.891007, -0.45399),
    (0.108993, -0.45399),
    (0.891007, 0.45399),
    (0.0822454, 0.397148),
    (0.917755, -0.397148),
    (0.0822454, -0.397148),
    (0.917755, 0.397148),
    (0.0591192, 0.338738),
    (0.940881, -0.338738),
    (0.0591192, -0.338738),
    (0.940881, 0.338738),
    (0.0397063, 0.278991),
    (0.960294, -0.278991),
    (0.0397063, -0.278991),
    (0.960294, 0.278991),
    (0.0240832, 0.218143),
    (0.975917, -0.218143),
    (0.0240832, -0.218143),
    (0.975917, 0.218143),
    (0.0123117, 0.156434),
    (0.987688, -0.156434),
    (0.0123117, -0.156434),
    (0.987688, 0.156434),
    (0.00443804, 0.0941083),
    (0.995562, -0.0941083),
    (0.00443804, -0.0941083),
    (0.995562, 0.0941083),
    (0.00049344, 0.0314108),
    (0.999507, -0.0314108),
    (0.00049344, -0.0314108),
    (0.999507, 0.0314108),
];
