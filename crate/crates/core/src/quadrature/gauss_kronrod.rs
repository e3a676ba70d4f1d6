//! 7-point Gauss / 15-point Kronrod panel rule (QUADPACK abscissae).

/// Kronrod abscissae on [-1, 1], descending, the last one is the centre.
pub(crate) const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

pub(crate) const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
pub(crate) const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Nodes and Kronrod weights of one panel, plus its Gauss/Kronrod
/// error estimate for the plain integral.
pub(crate) struct Panel {
    pub nodes: [f64; 15],
    pub weights: [f64; 15],
    pub values: [f64; 15],
    pub kronrod: f64,
    pub error: f64,
}

/// Apply the rule to `f` on `[a, b]`.
pub(crate) fn panel<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut nodes = [0.0; 15];
    let mut weights = [0.0; 15];
    let mut values = [0.0; 15];
    let mut gauss = 0.0;
    for j in 0..7 {
        let dx = h * XGK[j];
        for (slot, x) in [(2 * j, c - dx), (2 * j + 1, c + dx)] {
            nodes[slot] = x;
            weights[slot] = WGK[j] * h;
            values[slot] = f(x);
        }
        if j % 2 == 1 {
            gauss += WG[j / 2] * (values[2 * j] + values[2 * j + 1]);
        }
    }
    nodes[14] = c;
    weights[14] = WGK[7] * h;
    values[14] = f(c);
    gauss += WG[3] * values[14];
    gauss *= h;
    let kronrod: f64 = weights.iter().zip(&values).map(|(w, v)| w * v).sum();

    // QUADPACK rescaling of |K - G|
    let mean = kronrod / (2.0 * h);
    let asc: f64 = weights.iter().zip(&values).map(|(w, v)| w * (v - mean).abs()).sum();
    let mut error = (kronrod - gauss).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let abs: f64 = weights.iter().zip(&values).map(|(w, v)| w * v.abs()).sum();
    error = error.max(50.0 * f64::EPSILON * abs);
    Panel { nodes, weights, values, kronrod, error }
}
