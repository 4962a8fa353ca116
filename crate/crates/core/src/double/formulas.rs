//! Closed-form actions of the double generators on `A`, `B`, `B*`, written in
//! the expression grammar. Products such as `B*A` are products in
//! `Fun_q(SU(2))`, not normal-ordered sphere monomials.

/// `(actor, target, expected)` for the four `U_q(su(2))` generators.
pub const U_ACTIONS: [(&str, &str, &str); 12] = [
    ("k", "B", "q^-1*B"),
    ("k", "Bs", "q*Bs"),
    ("k", "A", "A"),
    ("kinv", "B", "q*B"),
    ("kinv", "Bs", "q^-1*Bs"),
    ("kinv", "A", "A"),
    ("e", "B", "0"),
    ("e", "Bs", "q^(-1/2) - (q^(3/2) + q^(-1/2))*A"),
    ("e", "A", "q^(1/2)*B"),
    ("es", "B", "-q^(-3/2) + (q^(1/2) + q^(-3/2))*A"),
    ("es", "Bs", "0"),
    ("es", "A", "-q^(-1/2)*Bs"),
];

/// `(actor, target, expected)` for the four `Fun_q(SU(2))` generators.
pub const FUN_ACTIONS: [(&str, &str, &str); 12] = [
    ("a", "B", "q^-1*B + (q - q^-1)*B*A"),
    ("a", "Bs", "q^-1*Bs + (q - q^-1)*A*Bs"),
    ("a", "A", "q^-2*A + (1 - q^-2)*A^2"),
    ("as", "B", "q*B + (q - q^3)*A*B"),
    ("as", "Bs", "q*Bs + (q - q^3)*Bs*A"),
    ("as", "A", "q^2*A + (q^2 - q^4)*A^2"),
    ("b", "B", "(q^2 - 1)*B^2"),
    ("b", "Bs", "(1 - q^2)*A^2"),
    ("b", "A", "(q^3 - q)*B*A"),
    ("bs", "B", "(q - q^-1)*A^2"),
    ("bs", "Bs", "-(q - q^-1)*Bs^2"),
    ("bs", "A", "(1 - q^2)*A*Bs"),
];
