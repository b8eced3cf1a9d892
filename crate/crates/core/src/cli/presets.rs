//! Figure presets. Each preset is a list of named sub-scenarios written in
//! the config-file syntax.

pub const PRESET_NAMES: [&str; 10] = [
    "fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10",
];

fn scenario(name: &str, body: &str) -> (String, String) {
    (name.to_string(), body.to_string())
}

/// Sub-scenarios of a preset, or `None` for an unknown name.
pub fn preset(name: &str) -> Option<Vec<(String, String)>> {
    let list = match name {
        // Yurke-Stoler displaced number states n = 0..3 and the even case
        "fig1" => {
            let mut v: Vec<_> = (0..4)
                .map(|n| {
                    scenario(
                        &format!("n{n}"),
                        &format!("alpha = 5\nn = {n}\neps = i\nk = 1\nt_max = 60\nobservables = inversion, pnd\n"),
                    )
                })
                .collect();
            v.push(scenario("even", "alpha = 5\nn = 1\neps = 1\nk = 1\nt_max = 60\nobservables = inversion, pnd\n"));
            v
        }
        "fig2" => vec![scenario(
            "even_n1",
            "alpha = 16\nn = 1\neps = 1\nk = 1\nobservables = inversion, asymptotic_inversion\n",
        )],
        "fig3" => vec![
            scenario("even", "alpha = 5\nn = 1\nr = 0\neps = 1\nk = 2\nobservables = inversion\n"),
            scenario("odd", "alpha = 5\nn = 1\nr = 0\neps = -1\nk = 2\nobservables = inversion\n"),
        ],
        "fig4" => vec![
            scenario("r0", "alpha = 3\nn = 1\nr = 0\neps = i\nk = 1\nt_max = 60\nobservables = inversion, pnd\n"),
            scenario("r1.2", "alpha = 3\nn = 1\nr = 1.2\neps = i\nk = 1\nt_max = 60\nobservables = inversion, pnd\n"),
        ],
        "fig5" => vec![scenario(
            "displaced_n1",
            "alpha = 7\nn = 1\neps = 0\nk = 1\nobservables = inversion, pnd\npnd_times = 22.21, 20.64\n",
        )],
        "fig6" => vec![scenario(
            "quarter_revival",
            "alpha = 7\nn = 1\neps = 0\nk = 2\nt_max = 3.1415926535898\nobservables = pnd, quarter_revival\npnd_times = 0.78539816339745\n",
        )],
        "fig7" => {
            let mut v: Vec<_> = (0..2)
                .map(|n| {
                    scenario(
                        &format!("a_n{n}"),
                        &format!("alpha = 7\nn = {n}\neps = 0\nk = 1\nt_max = 100\nobservables = purity\n"),
                    )
                })
                .collect();
            v.extend((1..=4).map(|k| {
                scenario(
                    &format!("b_k{k}"),
                    &format!("alpha = 7\nn = 1\neps = 0\nk = {k}\nt_max = 20\nobservables = purity\n"),
                )
            }));
            v
        }
        "fig8" => {
            let mut v = Vec::new();
            for (tag, state) in [("a", "n = 1\neps = 0\n"), ("b", "n = 0\neps = 1\n")] {
                for k in 1..=4 {
                    v.push(scenario(
                        &format!("{tag}_k{k}"),
                        &format!(
                            "{state}k = {k}\nsweep = alpha\nalpha_min = 0.05\nalpha_max = 5\nalpha_step = 0.05\nt = 1.578\nobservables = mandel_q\n"
                        ),
                    ));
                }
            }
            v.push(scenario(
                "a_t0",
                "n = 1\neps = 0\nk = 1\nsweep = alpha\nalpha_min = 0.05\nalpha_max = 5\nalpha_step = 0.05\nt = 0\nobservables = mandel_q\n",
            ));
            v
        }
        "fig9" => {
            let mut v: Vec<_> = [(1, "12.65"), (2, "4.5"), (3, "7.7"), (4, "9.6")]
                .iter()
                .map(|(k, t)| {
                    scenario(
                        &format!("a_k{k}"),
                        &format!(
                            "n = 0\neps = 1\nk = {k}\nsweep = alpha\nalpha_min = 0.05\nalpha_max = 5\nalpha_step = 0.05\nt = {t}\nobservables = squeezing\n"
                        ),
                    )
                })
                .collect();
            v.push(scenario(
                "b_k3",
                "alpha = 6\nn = 0\neps = 1\nk = 3\nt_max = 40\nobservables = squeezing\n",
            ));
            v.push(scenario(
                "b_inset_k1",
                "alpha = 6\nn = 0\neps = 1\nk = 1\nt_max = 40\nobservables = inversion\n",
            ));
            v
        }
        "fig10" => vec![
            scenario(
                "a",
                "alpha = 3\nn = 1\neps = 1\nk = 1\nsweep = wigner\ngrid = 201,201\nt = 4.599998\n",
            ),
            scenario(
                "b",
                "alpha = 3\nn = 1\neps = 1\nk = 1\nsweep = wigner\ngrid = 201,201\nt = 12.60001\n",
            ),
        ],
        _ => return None,
    };
    Some(list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::parse_config;

    #[test]
    fn every_preset_parses() {
        for name in PRESET_NAMES {
            let subs = preset(name).unwrap();
            assert!(!subs.is_empty());
            for (sub, text) in subs {
                parse_config(&text, &[]).unwrap_or_else(|e| panic!("{name}/{sub}: {e}"));
            }
        }
        assert!(preset("fig11").is_none());
    }
}
