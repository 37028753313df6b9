pub mod cli;
pub mod cyclotomic;
pub mod groups;
pub mod intertwiners;
pub mod reps;
pub mod twovect;
pub mod xmod;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    mod cyclotomic {}
    #[doc = include_str!("../../../book/src/crossed-modules.md")]
    mod crossed_modules {}
    #[doc = include_str!("../../../book/src/two-vect.md")]
    mod two_vect {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/intertwiners.md")]
    mod intertwiners {}
    #[doc = include_str!("../../../book/src/reducibility.md")]
    mod reducibility {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
