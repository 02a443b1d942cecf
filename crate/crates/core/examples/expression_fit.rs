//! Parse an expression, fit it with every operator, save one expansion as JSON and
//! load it back.

use altapprox::expr::parse_expr;
use altapprox::io::{ExpansionFile, Generator};
use altapprox::operators::{fit, FitOptions, Operator};

fn main() -> altapprox::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "exp(-x) * cos(3*x)".into());
    let expr = parse_expr(&text)?;
    println!("parsed:     {expr}");
    println!("derivative: {}", expr.derivative());
    let f = expr.to_func_spec(&text);

    let opts = FitOptions::default();
    for op in Operator::ALL {
        let e = fit(op, &f, 6, &opts)?;
        let err = (0..=200)
            .map(|i| i as f64 / 200.0)
            .map(|x| (e.value(x) - f.eval(x)).abs())
            .fold(0.0, f64::max);
        println!("{:<10} n = 6  max error {err:.2e}", op.name());
    }

    let e = fit(Operator::Weak, &f, 6, &opts)?;
    let file = ExpansionFile::from_expansion(
        &e,
        Generator {
            operator: "weak".into(),
            quad_tol: opts.quad.tol,
            relaxed_tol: opts.quad.relaxed_tol,
            source: Some(text.clone()),
            parity: None,
        },
    )?;
    let json = file.to_json();
    print!("\n{json}");
    let back = ExpansionFile::from_json(&json)?.to_expansion()?;
    assert_eq!(back, e);
    assert_eq!(ExpansionFile::from_json(&json)?.to_json(), json);
    println!("reloaded expansion is identical");
    Ok(())
}
