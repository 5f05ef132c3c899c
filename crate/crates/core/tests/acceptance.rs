//! The acceptance criteria, one PASS/FAIL line each. Every comparison is exact.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unipotent_invariants::automorphism::UnipotentAffineMap;
use unipotent_invariants::exponential::{
    check_eta, check_power_law, exp_series, lambda_inverse, lambda_matrix, vanishing_sums, Direction,
};
use unipotent_invariants::invariants::coefficients::index_set;
use unipotent_invariants::invariants::generators::{
    check_leading_quadratics, check_top_variables, u_from_tables, v_from_tables, w_generator, w_leading_form,
};
use unipotent_invariants::invariants::recurrence::{check_grids, check_tables, nested_sum_check, Grid};
use unipotent_invariants::invariants::systems::{all_equations, failures};
use unipotent_invariants::invariants::{
    m_count, mu_count, p_generator, u_generator, v_generator, BlockTables, TableKind,
};
use unipotent_invariants::linalg::{in_span, linearly_independent, spans_equal};
use unipotent_invariants::poly::{Monomial, Polynomial};
use unipotent_invariants::rewrite::{check_f_fn, expand_symbols, graded_basis, rewrite_affine, verify_relation};
use unipotent_invariants::scalar::int;
use unipotent_invariants::solver::{solve_filtered, solve_graded};
use unipotent_invariants::{Poly, Rational, Result};

type Verdict = Result<Option<String>>;
type Criterion = (&'static str, fn() -> Verdict);

fn affine(n: usize) -> Result<UnipotentAffineMap<Rational>> {
    UnipotentAffineMap::make_affine_jordan(n)
}

fn graded(nv: usize) -> Result<UnipotentAffineMap<Rational>> {
    UnipotentAffineMap::make_graded_jordan(nv)
}

fn fail(msg: String) -> Verdict {
    Ok(Some(msg))
}

fn closed_form_invariance() -> Verdict {
    for n in 2..=10 {
        let map = affine(n)?;
        for k in 1..=m_count(n) {
            if !map.is_invariant(&u_generator(n, k)?) {
                return fail(format!("u_{k}, n={n}"));
            }
        }
        for k in 1..=mu_count(n) {
            if !map.is_invariant(&v_generator(n, k)?) {
                return fail(format!("v_{k}, n={n}"));
            }
        }
    }
    Ok(None)
}

fn quadratic_dimension() -> Verdict {
    for n in 2..=8 {
        let oracle = solve_filtered(&affine(n)?, 2)?;
        if oracle.dimension() != n / 2 + 1 {
            return fail(format!("n={n}: dimension {}", oracle.dimension()));
        }
        let mut expected = vec![Polynomial::one(n)];
        for k in 1..=m_count(n) {
            expected.push(u_generator(n, k)?);
        }
        if !spans_equal(&oracle.basis, &expected) {
            return fail(format!("n={n}: span differs"));
        }
    }
    Ok(None)
}

fn degree_one() -> Verdict {
    for n in 2..=8 {
        let oracle = solve_filtered(&affine(n)?, 1)?;
        if oracle.basis != vec![Polynomial::one(n)] {
            return fail(format!("n={n}: {} invariants", oracle.dimension()));
        }
    }
    Ok(None)
}

fn cubic_membership() -> Verdict {
    for n in 5..=7 {
        let oracle = solve_filtered(&affine(n)?, 3)?;
        for k in 1..=mu_count(n) {
            if !in_span(&v_generator(n, k)?, &oracle.basis) {
                return fail(format!("v_{k}, n={n}"));
            }
        }
    }
    Ok(None)
}

fn coefficient_identities() -> Verdict {
    for k in 1..=12 {
        let eqs = all_equations(&BlockTables::closed_form(k)?)?;
        if let Some(e) = failures(&eqs).first() {
            return fail(format!("k={k}: {}", e.label));
        }
    }
    Ok(None)
}

fn recurrence_closed_forms() -> Verdict {
    for k in 3..=12 {
        for c in 0..=(k as i64 - 2).min(5) {
            if !check_tables(k, c)?.holds() {
                return fail(format!("tables k={k}, c={c}"));
            }
        }
    }
    for c in 0..=10 {
        for k in 0..=c {
            if !nested_sum_check(c, k as usize) {
                return fail(format!("nested sum c={c}, k={k}"));
            }
        }
    }
    Ok(None)
}

fn exponential_identities() -> Verdict {
    for size in 1..=10 {
        if !exp_series(Direction::Plus, size)?.mul(&exp_series(Direction::Minus, size)?).is_identity() {
            return fail(format!("E E_- at size {size}"));
        }
        if !lambda_matrix(size)?.mul(&lambda_inverse(size)?).is_identity() {
            return fail(format!("Lambda Lambda^-1 at size {size}"));
        }
    }
    for k in 1..=10 {
        // the bounded sum is only claimed for k <= n
        for n in k..=10 {
            let s = vanishing_sums(k, n)?;
            if !s.unbounded.is_zero() || !s.bounded.is_zero() {
                return fail(format!("vanishing sums k={k}, n={n}"));
            }
        }
    }
    if !check_eta(10)? {
        return fail("eta entries".into());
    }
    if !check_power_law(8)? {
        return fail("power law".into());
    }
    Ok(None)
}

fn random_symbol_poly(rng: &mut ChaCha8Rng, n: usize) -> Poly {
    // symbols T2..Tn sit at indices 1..n-1; X1 (index 0) is left out
    let mut g = Polynomial::zero(n);
    for _ in 0..rng.gen_range(1..=6) {
        let mut exps = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=3) {
            exps[rng.gen_range(1..n)] += 1;
        }
        g.add_term(Monomial::from_exponents(exps), int(rng.gen_range(-9..=9)));
    }
    g
}

fn free_generation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 2..=7 {
        for trial in 0..200 {
            let g = random_symbol_poly(&mut rng, n);
            let f = expand_symbols(&g, n)?;
            let r = rewrite_affine(&f, n)?;
            if r.expression != g || r.residual_x1_degree != 0 || r.expand()? != f {
                return fail(format!("n={n}, trial {trial}"));
            }
        }
    }
    Ok(None)
}

fn defining_relations() -> Verdict {
    for n in [3, 4] {
        if !verify_relation(n)? {
            return fail(format!("n={n}"));
        }
    }
    Ok(None)
}

fn graded_structure() -> Verdict {
    for n in 2..=4 {
        for i in 0..=8 {
            let b = graded_basis(n, i)?;
            let oracle = solve_graded(&graded(n + 1)?, i)?;
            if b.len() != oracle.dimension() || !linearly_independent(&b.polys) {
                return fail(format!("n={n}, degree {i}: {} vs {}", b.len(), oracle.dimension()));
            }
        }
    }
    for n in 2..=6 {
        let oracle = solve_graded(&graded(n + 1)?, 2)?;
        let mut expected = vec![Polynomial::var(n + 1, 0).pow(2)];
        for k in 1..=m_count(n) {
            expected.push(p_generator(n, k)?);
        }
        if oracle.dimension() != expected.len() || !spans_equal(&oracle.basis, &expected) {
            return fail(format!("quadratic basis n={n}"));
        }
    }
    Ok(None)
}

fn localization_identity() -> Verdict {
    for n in 2..=4 {
        for d in 0..=6 {
            for f in solve_graded(&graded(n + 1)?, d)?.basis {
                if !check_f_fn(&f)? {
                    return fail(format!("n={n}, degree {d}: {f}"));
                }
            }
        }
    }
    Ok(None)
}

fn w_elements() -> Verdict {
    for n in 5..=7 {
        let map = affine(n)?;
        for k in 2..=mu_count(n) {
            let w = w_generator(n, k)?;
            if !map.is_invariant(&w) {
                return fail(format!("w_{k} not invariant, n={n}"));
            }
            if w.leading_form()? != w_leading_form(n, k)? {
                return fail(format!("leading form of w_{k}, n={n}"));
            }
        }
    }
    for k in 2..=6 {
        if !check_top_variables(k)? || !check_leading_quadratics(k)? {
            return fail(format!("leading coefficients k={k}"));
        }
    }
    Ok(None)
}

/// Does a perturbed block break invariance or the coefficient system?
fn detected(t: &BlockTables) -> Result<bool> {
    let k = t.k;
    let n = 2 * k + 1;
    let map = affine(n)?;
    if !map.is_invariant(&u_from_tables(n, t)?) {
        return Ok(true);
    }
    if k >= 2 && !map.is_invariant(&v_from_tables(n, t)?) {
        return Ok(true);
    }
    Ok(!failures(&all_equations(t)?).is_empty())
}

fn negative_controls() -> Verdict {
    let mut probes = 0;
    for k in 1..=8 {
        let base = BlockTables::closed_form(k)?;
        for kind in TableKind::ALL {
            if k < kind.min_k() {
                continue;
            }
            for (i, j) in index_set(kind, k) {
                probes += 1;
                if !detected(&base.perturbed(kind, i, j, &int(1)))? {
                    return fail(format!("{kind}({i}, {j}) at k={k} went unnoticed"));
                }
            }
        }
        if k >= 3 {
            let grid = |kind| -> Grid {
                base.table(kind)
                    .unwrap()
                    .entries()
                    .map(|((i, j), v)| ((i as i64, j as i64), v.clone()))
                    .collect()
            };
            let mut lambda = grid(TableKind::Lambda);
            let key = *lambda.keys().next().unwrap();
            *lambda.get_mut(&key).unwrap() += int(1);
            if check_grids(k, &lambda, &grid(TableKind::Alpha), 1)?.holds() {
                return fail(format!("perturbed recurrence at k={k} went unnoticed"));
            }
        }
    }
    if probes != (1..=8).map(entry_count).sum::<usize>() {
        return fail("probe count mismatch".into());
    }
    Ok(None)
}

/// Entries per block, counted from the index ranges directly.
fn entry_count(k: usize) -> usize {
    let k = k as i64;
    let lambda: i64 = (1..k).map(|i| k - i + 1).sum();
    let mu = k + 1;
    let cubic = if k >= 2 { lambda + (k + 1) } else { 0 };
    (lambda + mu + cubic) as usize
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("closed-form invariance, 2 <= n <= 10", closed_form_invariance),
        ("quadratic dimension m+1 and span, 2 <= n <= 8", quadratic_dimension),
        ("degree-1 invariants are constants, 2 <= n <= 8", degree_one),
        ("v_k in the cubic kernel, 5 <= n <= 7", cubic_membership),
        ("coefficient identities, k <= 12", coefficient_identities),
        ("recurrence closed forms and nested sums", recurrence_closed_forms),
        ("exponential series identities", exponential_identities),
        ("free generation round trip, 200 samples per n <= 7", free_generation),
        ("defining relations for n = 3, 4", defining_relations),
        ("graded bases against oracle dimensions", graded_structure),
        ("localization identity, n <= 4, degree <= 6", localization_identity),
        ("w_k invariance and leading forms", w_elements),
        ("negative controls on every coefficient", negative_controls),
    ];
    let mut failed = 0;
    for (idx, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(None) => println!("PASS criterion {:>2}: {name} ({secs:.2}s)", idx + 1),
            Ok(Some(why)) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why} ({secs:.2}s)", idx + 1);
            }
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: error {e} ({secs:.2}s)", idx + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
