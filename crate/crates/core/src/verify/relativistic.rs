//! Dirac algebra, Lorentz transformations, Zitterbewegung and the
//! Foldy-Wouthuysen reduction.

use num_complex::Complex64;

use std::fmt;

use super::{Checker, Residual};
use crate::dirac::{build_rep, DiracRep, Kinematics};
use crate::fw::{fw_dirac_em, reference_cases, FwParams};
use crate::grassmann::Multivector;
use crate::scalar::{Bindings, Coeff, Exact};

type Mc = Multivector<Complex64>;

fn n(k: i64) -> Exact {
    Exact::from(k)
}

/// Closed-form pure boost with rapidity vector `w`.
fn boost_matrix(w: [f64; 3]) -> [[f64; 4]; 4] {
    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    if norm == 0.0 {
        return m;
    }
    let u = w.map(|x| x / norm);
    let (ch, sh) = (norm.cosh(), norm.sinh());
    m[0][0] = ch;
    for i in 1..4 {
        m[0][i] = u[i - 1] * sh;
        m[i][0] = u[i - 1] * sh;
        for j in 1..4 {
            m[i][j] += (ch - 1.0) * u[i - 1] * u[j - 1];
        }
    }
    m
}

/// Algebra, trace and projector identities at `(m, c, p) = (3, 1, (4, 0, 0))`,
/// `E = 5`, in whichever coefficient ring the backend selects.
fn identity_checks<S>(ck: &mut Checker, rep: &DiracRep<S>, kin: &Kinematics<S>, tag: &str) -> crate::Result<()>
where
    S: Coeff + fmt::Display + Residual,
    Multivector<S>: Residual,
{
    let n = |k: i64| S::from_int(k);
    for (name, res) in rep.algebra_residuals()? {
        ck.exact(&format!("{tag}/{name}"), "Dirac algebra relation", tag, &name, "0", &res);
    }
    for t in rep.gamma_trace_suite()? {
        let res = t.value.clone() - t.expected.clone();
        ck.exact(&format!("{tag}/{}", t.name), "γ trace identity", tag, &t.value, &t.expected, &res);
    }
    let inputs = format!("{tag} m=3 c=1 p=(4,0,0) E=5");
    let h = rep.hamiltonian(kin);
    let (plus, minus) = rep.energy_projectors(kin)?;
    let one = Multivector::<S>::one(rep.dim());
    let sq = rep.star(&h, &h)? - Multivector::<S>::scalar(rep.dim(), kin.energy_squared());
    ck.exact(&format!("{tag}/hamiltonian-square"), "H_D⋆H_D = E²", &inputs, "H_D⋆H_D", "25", &sq);
    let eig_p = rep.star(&h, &plus)? - plus.scale(&n(5));
    ck.exact(&format!("{tag}/energy-eigen-plus"), "H_D⋆π₊ = Eπ₊", &inputs, "H_D⋆π₊", "5π₊", &eig_p);
    let eig_m = rep.star(&h, &minus)? + minus.scale(&n(5));
    ck.exact(&format!("{tag}/energy-eigen-minus"), "H_D⋆π₋ = −Eπ₋", &inputs, "H_D⋆π₋", "−5π₋", &eig_m);
    for (name, p) in [("plus", &plus), ("minus", &minus)] {
        let idem = rep.star(p, p)? - p.clone();
        ck.exact(&format!("{tag}/energy-idempotent-{name}"), "π⋆π = π", &inputs, "π⋆π", "π", &idem);
    }
    ck.exact(&format!("{tag}/energy-orthogonal"), "π₊⋆π₋ = 0", &inputs, "π₊⋆π₋", "0", &rep.star(&plus, &minus)?);
    ck.exact(&format!("{tag}/energy-complete"), "π₊ + π₋ = 1", &inputs, "π₊ + π₋", "1", &(plus.clone() + minus.clone() - one.clone()));
    let tr = rep.trace(&plus);
    ck.exact(&format!("{tag}/energy-trace"), "Tr π₊ = 2", &inputs, &tr, "2", &(tr.clone() - n(2)));

    let u = [n(0), S::from_ratio(3, 5), S::from_ratio(4, 5)];
    let (sp, sm) = rep.spin_projectors(kin, &u)?;
    let s = rep.spin_operator(&u)?;
    let comm = rep.spec.commutator(&h, &s)?;
    ck.exact(&format!("{tag}/spin-commutes"), "[H_D, S_u]⋆ = 0", &inputs, "[H_D, S_u]⋆", "0", &comm);
    let half_h = rep.hbar.clone() * S::from_ratio(1, 2);
    let sp_eig = rep.star(&s, &sp)? - sp.scale(&half_h);
    ck.exact(&format!("{tag}/spin-eigen"), "S_u⋆π₊ₛ = (ħ/2)π₊ₛ", &inputs, "S_u⋆π₊ₛ", "(ħ/2)π₊ₛ", &sp_eig);
    for (en, e) in [("plus", &plus), ("minus", &minus)] {
        for (sn, sproj) in [("up", &sp), ("down", &sm)] {
            let id = format!("{tag}/joint-{en}-{sn}");
            let a = rep.star(e, sproj)?;
            ck.exact(&format!("{id}/commute"), "π_E⋆π_s = π_s⋆π_E", &inputs, "π_E⋆π_s", "π_s⋆π_E", &(a.clone() - rep.star(sproj, e)?));
            ck.exact(&format!("{id}/idempotent"), "(π_E⋆π_s)² = π_E⋆π_s", &inputs, "(π_E⋆π_s)²", "π_E⋆π_s", &(rep.star(&a, &a)? - a.clone()));
            let tr = rep.trace(&a);
            ck.exact(&format!("{id}/trace"), "Tr(π_E⋆π_s) = 1", &inputs, &tr, "1", &(tr.clone() - n(1)));
        }
    }
    // covariant forms
    let (cp, cm) = rep.covariant_energy_projectors(kin)?;
    let ps = rep.slash(&kin.four_momentum()?);
    let mc = Multivector::<S>::scalar(rep.dim(), n(3));
    ck.exact(&format!("{tag}/covariant-energy-plus"), "(p̸ − mc)⋆π₊ = 0", &inputs, "(p̸ − mc)⋆π₊", "0", &rep.star(&(ps.clone() - mc.clone()), &cp)?);
    ck.exact(&format!("{tag}/covariant-energy-minus"), "(p̸ + mc)⋆π₋ = 0", &inputs, "(p̸ + mc)⋆π₋", "0", &rep.star(&(ps + mc), &cm)?);
    let u4 = [n(0), n(0), n(1), n(0)];
    let (csp, csm) = rep.covariant_spin_projectors(kin, &u4)?;
    ck.exact(&format!("{tag}/covariant-spin-complete"), "π₊ₛ + π₋ₛ = 1", &inputs, "π₊ₛ + π₋ₛ", "1", &(csp.clone() + csm - one));
    let idem = rep.star(&csp, &csp)? - csp.clone();
    ck.exact(&format!("{tag}/covariant-spin-idempotent"), "π₊ₛ⋆π₊ₛ = π₊ₛ", &inputs, "π₊ₛ⋆π₊ₛ", "π₊ₛ", &idem);
    Ok(())
}

fn float_dirac(ck: &mut Checker, rep: &DiracRep<Exact>, tag: &str) -> crate::Result<()> {
    let env = Bindings { hbar: ck.cfg.hbar, c: 1.0 };
    let f = rep.to_complex(&env);
    let max_diff = |l: &[[Complex64; 4]; 4], m: &[[f64; 4]; 4]| {
        (0..16).map(|k| (l[k / 4][k % 4] - m[k / 4][k % 4]).norm()).fold(0.0, f64::max)
    };
    for (k, w) in [[0.7, 0.0, 0.0], [0.3, -0.5, 0.9], [0.0, 1.4, 0.2]].into_iter().enumerate() {
        let inputs = format!("{tag} hbar={} w={w:?}", env.hbar);
        let l = f.lambda_from(|x| f.boost(&w, x))?;
        let d = max_diff(&l, &boost_matrix(w));
        ck.float(&format!("{tag}/boost/{k}"), "Λ from Exp(−ω·K)⋆γ⋆Exp(ω·K) matches cosh/sinh boost", &inputs, "Λ", "boost(ω)", d, 1e-10);
    }
    for (k, p) in [[4.0, 0.0, 0.0], [0.3, -1.2, 2.5]].into_iter().enumerate() {
        let inputs = format!("{tag} hbar={} m=3 c=1 p={p:?}", env.hbar);
        let kin = Kinematics::float(3.0, 1.0, p)?;
        let w = kin.rapidity();
        let s = f.boost_element(&w)?;
        let s_inv = f.boost_element(&w.map(|x| -x))?;
        let rest = Kinematics::float(3.0, 1.0, [0.0; 3])?;
        let (rp, rm) = f.energy_projectors(&rest)?;
        let (cp, cm) = f.covariant_energy_projectors(&kin)?;
        let d = f.star_all(&[&s_inv, &rp, &s])?.max_abs_diff(&cp).max(f.star_all(&[&s_inv, &rm, &s])?.max_abs_diff(&cm));
        ck.float(&format!("{tag}/boosted-projectors/{k}"), "boosted rest-frame projectors equal covariant ones", &inputs, "S⁻¹⋆π(0)⋆S", "π(p)", d, 1e-10);
    }
    // Zitterbewegung
    let zenv = Bindings { hbar: ck.cfg.hbar, c: 1.0 };
    let zf = rep.to_complex(&zenv);
    let kin = Kinematics::float(3.0, 1.0, [4.0, 0.0, 0.0])?;
    let t_max = 10.0 * zenv.hbar / kin.energy.re;
    let mut worst: f64 = 0.0;
    for s in 0..64 {
        let t = t_max * s as f64 / 63.0;
        for i in 1..=3 {
            worst = worst.max(zf.heisenberg_residual(&kin, i, t)?.norm1());
        }
    }
    let inputs = format!("{tag} hbar={} m=3 c=1 p=(4,0,0) samples=64", zenv.hbar);
    ck.float(&format!("{tag}/zitterbewegung-heisenberg"), "iħẋ = [x, H_D] along the trajectory", &inputs, worst, 0, worst, 1e-8);
    let (plus, minus) = zf.drift_slopes(&kin, 1)?;
    let d = (plus - 0.8).abs().max((minus + 0.8).abs());
    ck.float(&format!("{tag}/zitterbewegung-drift"), "drift velocity ±c²p/E", &inputs, format!("({plus}, {minus})"), "(0.8, -0.8)", d, 1e-12);
    let zero_shift: Mc = zf.position_shift(&kin, 1, 0.0)?;
    ck.float(&format!("{tag}/zitterbewegung-origin"), "x(0) − x = 0", &inputs, zero_shift.norm1(), 0, zero_shift.norm1(), 1e-15);
    Ok(())
}

pub(super) fn dirac(ck: &mut Checker) {
    for kind in ck.cfg.reps.clone() {
        let tag = kind.name();
        let rep = match build_rep(kind) {
            Ok(r) => r,
            Err(e) => {
                ck.error(tag, "build representation", tag, &e);
                continue;
            }
        };
        ck.guard(&format!("{tag}/identities"), |ck| {
            let kin = Kinematics::exact(n(3), n(1), [n(4), n(0), n(0)], n(5))?;
            if ck.float_backend() {
                let env = ck.env();
                identity_checks(ck, &rep.to_complex(&env), &kin.to_complex(&env), tag)
            } else {
                identity_checks(ck, &rep, &kin, tag)
            }
        });
        ck.guard(&format!("{tag}/float"), |ck| float_dirac(ck, &rep, tag));
    }
}

pub(super) fn fw(ck: &mut Checker) {
    let params = FwParams { m: Exact::rational(3, 2), e: Exact::from(-1) };
    let order = ck.cfg.fw_order;
    for (case, field) in reference_cases() {
        let inputs = format!("case={case} m=3/2 e=-1 order={order}");
        ck.guard(case, |ck| {
            let report = fw_dirac_em(&field, &params, order)?;
            for t in &report.terms {
                let id = format!("{case}/{}", t.term.replace(' ', "-"));
                ck.holds(&id, &format!("{} coefficient", t.term), &inputs, &t.computed_coefficient, &t.expected_coefficient, t.exact);
            }
            ck.holds(&format!("{case}/unmatched"), "no unexpected terms in H″", &inputs, &report.unmatched, "0", report.unmatched == "0");
            ck.holds(&format!("{case}/odd-vanishes"), "odd part of H″ vanishes to order", &inputs, report.odd_vanishes_after_two, true, report.odd_vanishes_after_two);
            ck.holds(&format!("{case}/unitary"), "U⋆U† = 1 to order", &inputs, report.unitary, true, report.unitary);
            Ok(())
        });
    }
}
