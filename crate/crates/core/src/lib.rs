//! Chart matrices for Richardson varieties in the orthogonal Grassmannian OG(n, 2n+1),
//! their torus-orbit degenerations over Q(t), and the delta-matroid polytopes of the
//! resulting components.

pub mod chart;
pub mod combin;
pub mod decomp;
pub mod degen;
pub mod dmatroid;
pub mod exactnum;
