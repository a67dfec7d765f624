//! Words in elementary generators and the constructive lemmas built on them.

mod lemmas;
mod word;

pub use lemmas::{
    commutator_factor, commutator_normal_form, normalize_mod_plus, rearrange_product,
    transvection_word, transvection_word_conj, CommutatorNormalForm, ConjugatedTransvection,
    ConjugatedWord, Witness,
};
pub use word::{
    gen_matrix, split_word, word_conjugate, word_eval, word_inverse, word_plus_eval, ElemGen,
    ElemWord,
};
