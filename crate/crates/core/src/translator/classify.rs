use serde::Serialize;

use super::{concat, TranslateError};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormCase {
    /// `U1·C·U2·C⁻¹` with a nonempty bridge `C`.
    F1,
    /// `U1 = D·P⁻¹`, `U2 = P·E`, product `D·E`.
    F2,
    /// `U1 = D·C·U2⁻¹·C⁻¹`, product `D`.
    F3,
    /// `U2 = D·C·U1⁻¹·C⁻¹`, product `D`.
    F4,
}

/// Shape of the cyclically reduced product of two conjugated relators.
///
/// `u1` and `u2` are the rotations of the inputs (`u1 = rotate(U1,
/// u1_rotation)`) for which the case equations hold letter for letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormClassification {
    pub case: FormCase,
    pub c: Word,
    pub d: Word,
    pub e: Word,
    pub p: Word,
    pub u1: Word,
    pub u2: Word,
    pub u1_rotation: usize,
    pub u2_rotation: usize,
    /// Cyclic reduction of the product as computed directly.
    pub product: Word,
    /// `rotate(product, product_rotation) == reassemble()`.
    pub product_rotation: usize,
}

impl FormClassification {
    pub fn reassemble(&self) -> Word {
        match self.case {
            FormCase::F1 => Word::product([&self.u1, &self.c, &self.u2, &self.c.inverse()]),
            FormCase::F2 => self.d.mul(&self.e),
            FormCase::F3 | FormCase::F4 => self.d.clone(),
        }
    }

    /// Check the literal case equations.
    pub fn is_consistent(&self) -> bool {
        let ci = self.c.inverse();
        let shape = match self.case {
            FormCase::F1 => {
                !self.c.is_empty()
                    && concat(&[&self.u1, &self.c, &self.u2, &ci]).is_some_and(|w| w.is_cyclically_reduced())
            }
            FormCase::F2 => {
                !self.d.is_empty()
                    && !self.e.is_empty()
                    && concat(&[&self.d, &self.p.inverse()]).as_ref() == Some(&self.u1)
                    && concat(&[&self.p, &self.e]).as_ref() == Some(&self.u2)
                    && concat(&[&self.d, &self.e]).is_some_and(|w| w.is_cyclically_reduced())
            }
            FormCase::F3 => concat(&[&self.d, &self.c, &self.u2.inverse(), &ci]).as_ref() == Some(&self.u1),
            FormCase::F4 => concat(&[&self.d, &self.c, &self.u1.inverse(), &ci]).as_ref() == Some(&self.u2),
        };
        shape && self.product.rotated(self.product_rotation) == self.reassemble()
    }
}

/// Classify the cyclic reduction of `S1·U1·S1⁻¹·S2·U2·S2⁻¹`.
///
/// Conjugating by `S1⁻¹` gives `U1·C·U2·C⁻¹` with `C = S1⁻¹S2`. Letters of
/// `C` that cancel against an end of `U1` or `U2` are absorbed by rotating
/// that relator; if a bridge survives the product is F1. Otherwise the
/// product is `U1'·U2'` and the junction and wrap-around cancellations
/// decide between F2 and a swallowed relator (F3/F4).
pub fn classify_product(s1: &Word, u1: &Word, s2: &Word, u2: &Word) -> Result<FormClassification, TranslateError> {
    for (name, u) in [("U1", u1), ("U2", u2)] {
        if u.is_empty() || !u.is_cyclically_reduced() {
            return Err(TranslateError::Precondition(format!("{name} must be nonempty and cyclically reduced")));
        }
    }
    let product = Word::product([s1, u1, &s1.inverse(), s2, u2, &s2.inverse()]).cyclic_reduce().core;
    if product.is_empty() {
        return Err(TranslateError::EmptyProduct);
    }

    let mut c = Word::product([&s1.inverse(), s2]);
    let (mut x, mut y) = (u1.clone(), u2.clone());
    loop {
        if let Some(c1) = c.first() {
            if x.last() == Some(c1.inv()) {
                x = x.rotated(x.len() - 1);
                c = c.slice(1, c.len());
                continue;
            }
            if x.first() == Some(c1) {
                x = x.rotated(1);
                c = c.slice(1, c.len());
                continue;
            }
        }
        if let Some(cl) = c.last() {
            if y.first() == Some(cl.inv()) {
                y = y.rotated(1);
                c = c.slice(0, c.len() - 1);
                continue;
            }
            if y.last() == Some(cl) {
                y = y.rotated(y.len() - 1);
                c = c.slice(0, c.len() - 1);
                continue;
            }
        }
        break;
    }

    let empty = Word::empty();
    let (case, c, d, e, p, x, y) = if !c.is_empty() {
        (FormCase::F1, c, empty.clone(), empty.clone(), empty, x, y)
    } else {
        let (xl, yl) = (x.letters(), y.letters());
        let (nx, ny) = (xl.len(), yl.len());
        let mut alpha = 0;
        while alpha < nx.min(ny) && xl[nx - 1 - alpha].cancels(yl[alpha]) {
            alpha += 1;
        }
        if alpha == nx && alpha == ny {
            return Err(TranslateError::EmptyProduct);
        }
        if alpha == nx {
            // X⁻¹ is a prefix of Y
            let cr = y.slice(alpha, ny).cyclic_reduce();
            let yr = y.rotated(alpha + cr.conjugator.len());
            (FormCase::F4, cr.conjugator.inverse(), cr.core, empty.clone(), empty, x, yr)
        } else if alpha == ny {
            let cr = x.slice(0, nx - alpha).cyclic_reduce();
            let xr = x.rotated(cr.conjugator.len());
            (FormCase::F3, cr.conjugator.inverse(), cr.core, empty.clone(), empty, xr, y)
        } else {
            let (lx, ly) = (nx - alpha, ny - alpha);
            let mut beta = 0;
            while beta < lx.min(ly) && xl[beta].cancels(yl[ny - 1 - beta]) {
                beta += 1;
            }
            if beta == lx && beta == ly {
                return Err(TranslateError::EmptyProduct);
            }
            if beta < lx && beta < ly {
                let d = x.slice(beta, lx);
                let p = y.slice(ny - beta, ny).mul(&y.slice(0, alpha));
                let e = y.slice(alpha, ny - beta);
                (FormCase::F2, empty, d, e, p, x.rotated(beta), y.rotated(ny - beta))
            } else if beta == lx {
                let cr = y.slice(alpha, ny - beta).cyclic_reduce();
                let yr = y.rotated(alpha + cr.conjugator.len());
                (FormCase::F4, cr.conjugator.inverse(), cr.core, empty.clone(), empty, x.rotated(beta), yr)
            } else {
                let cr = x.slice(beta, lx).cyclic_reduce();
                let xr = x.rotated(beta + cr.conjugator.len());
                (FormCase::F3, cr.conjugator.inverse(), cr.core, empty.clone(), empty, xr, y.rotated(alpha))
            }
        }
    };

    let mut out = FormClassification {
        case,
        c,
        d,
        e,
        p,
        u1_rotation: u1.rotation_to(&x).expect("rotation of U1"),
        u2_rotation: u2.rotation_to(&y).expect("rotation of U2"),
        u1: x,
        u2: y,
        product,
        product_rotation: 0,
    };
    out.product_rotation = out
        .product
        .rotation_to(&out.reassemble())
        .ok_or_else(|| TranslateError::Unverified("classified form does not reassemble the product".into()))?;
    debug_assert!(out.is_consistent(), "{out:?}");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{w, Letter};
    use proptest::prelude::*;

    #[test]
    fn plain_concatenation_is_f2() {
        let f = classify_product(&w("1"), &w("ab"), &w("1"), &w("ba")).unwrap();
        assert_eq!(f.case, FormCase::F2);
        assert_eq!((f.d.clone(), f.p.clone(), f.e.clone()), (w("ab"), w("1"), w("ba")));
        assert!(f.is_consistent());
    }

    #[test]
    fn swallowed_relator_is_f3() {
        let f = classify_product(&w("1"), &w("bbaBAA"), &w("a"), &w("ab")).unwrap();
        assert_eq!(f.case, FormCase::F3);
        assert_eq!(f.d, w("bb"));
        assert_eq!(f.c.len(), 1);
        assert!(f.is_consistent());
    }

    #[test]
    fn bridge_is_f1() {
        let f = classify_product(&w("1"), &w("ab"), &w("c"), &w("ab")).unwrap();
        assert_eq!(f.case, FormCase::F1);
        assert_eq!(f.c, w("c"));
        assert_eq!(f.reassemble(), w("abcabC"));
    }

    #[test]
    fn swallowing_the_other_way_is_f4() {
        let f = classify_product(&w("1"), &w("ab"), &w("1"), &w("BAcc")).unwrap();
        assert_eq!(f.case, FormCase::F4);
        assert_eq!(f.d, w("cc"));
        assert!(f.is_consistent());
    }

    #[test]
    fn cancelling_product_is_reported() {
        assert_eq!(classify_product(&w("1"), &w("ab"), &w("1"), &w("BA")), Err(TranslateError::EmptyProduct));
        assert_eq!(classify_product(&w("1"), &w("ab"), &w("B"), &w("AB")), Err(TranslateError::EmptyProduct));
    }

    fn word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0u32..3, any::<bool>()), 0..=max)
            .prop_map(|v| Word::reduce(v.into_iter().map(|(g, i)| Letter::new(g, i))))
    }

    fn core(max: usize) -> impl Strategy<Value = Word> {
        word(max).prop_map(|x| x.cyclic_reduce().core).prop_filter("nonempty", |x| !x.is_empty())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn reassembly_matches_brute_force(s1 in word(5), u1 in core(6), s2 in word(5), u2 in core(6)) {
            // independent oracle: reduce letter by letter, then strip matching ends
            let mut stack: Vec<Letter> = Vec::new();
            for part in [s1.clone(), u1.clone(), s1.inverse(), s2.clone(), u2.clone(), s2.inverse()] {
                for &l in part.letters() {
                    if stack.last().is_some_and(|t| t.cancels(l)) { stack.pop(); } else { stack.push(l); }
                }
            }
            while stack.len() >= 2 && stack[0].cancels(*stack.last().unwrap()) {
                stack.pop();
                stack.remove(0);
            }
            match classify_product(&s1, &u1, &s2, &u2) {
                Err(TranslateError::EmptyProduct) => prop_assert!(stack.is_empty()),
                Err(e) => prop_assert!(false, "{e}"),
                Ok(f) => {
                    prop_assert!(f.is_consistent(), "{:?}", f);
                    prop_assert_eq!(f.product.letters(), &stack[..]);
                    prop_assert_eq!(u1.rotated(f.u1_rotation), f.u1.clone());
                    prop_assert_eq!(u2.rotated(f.u2_rotation), f.u2.clone());
                }
            }
        }
    }
}
