use std::sync::Arc;

use crate::category::{has_final_object, slice_category, slice_functor, CatFunctor, FinCat};
use crate::error::Result;
use crate::lifting::Liftable;
use crate::twocat::{object_admits_final, slice_2category, slice_2functor, Fin2Cat, TwoFunctor};

/// What the localizer checks need from `Cat` or `2-Cat`.
pub trait Ambient: Liftable<Object: PartialEq + std::fmt::Debug> {
    const LEVEL: usize;

    fn identity_on(x: &Arc<Self::Object>) -> Self;
    fn collapse(x: &Arc<Self::Object>, terminal: &Arc<Self::Object>) -> Result<Self>;
    /// The final-object criterion: a final object at level 1, an object
    /// admitting a final object at level 2.
    fn admits_final(x: &Self::Object) -> Result<bool>;
    fn object_names(x: &Self::Object) -> Vec<String>;
    fn slice(p: &Self, c: usize) -> Result<Arc<Self::Object>>;
    fn slice_map(u: &Self, p: &Self, q: &Self, c: usize) -> Result<Self>;
}

impl Ambient for CatFunctor {
    const LEVEL: usize = 1;

    fn identity_on(x: &Arc<FinCat>) -> Self {
        CatFunctor::identity(x.clone())
    }

    fn collapse(x: &Arc<FinCat>, terminal: &Arc<FinCat>) -> Result<Self> {
        CatFunctor::to_terminal(x.clone(), terminal.clone())
    }

    fn admits_final(x: &FinCat) -> Result<bool> {
        Ok(has_final_object(x).is_some())
    }

    fn object_names(x: &FinCat) -> Vec<String> {
        x.objects().to_vec()
    }

    fn slice(p: &Self, c: usize) -> Result<Arc<FinCat>> {
        Ok(slice_category(p, c)?.category)
    }

    fn slice_map(u: &Self, p: &Self, q: &Self, c: usize) -> Result<Self> {
        slice_functor(u, p, q, c)
    }
}

impl Ambient for TwoFunctor {
    const LEVEL: usize = 2;

    fn identity_on(x: &Arc<Fin2Cat>) -> Self {
        TwoFunctor::identity(x.clone())
    }

    fn collapse(x: &Arc<Fin2Cat>, terminal: &Arc<Fin2Cat>) -> Result<Self> {
        TwoFunctor::to_terminal(x.clone(), terminal.clone())
    }

    fn admits_final(x: &Fin2Cat) -> Result<bool> {
        for z in 0..x.object_count() {
            if object_admits_final(x, z)?.0 {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn object_names(x: &Fin2Cat) -> Vec<String> {
        x.objects().to_vec()
    }

    fn slice(p: &Self, c: usize) -> Result<Arc<Fin2Cat>> {
        Ok(slice_2category(p, c)?.category)
    }

    fn slice_map(u: &Self, p: &Self, q: &Self, c: usize) -> Result<Self> {
        slice_2functor(u, p, q, c)
    }
}
