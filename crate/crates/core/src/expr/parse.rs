//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr     := term (('+'|'-') term)* ;
//! term     := factor (('*'|'/') factor)* ;
//! factor   := ['-'] atom ['^' integer] ;
//! atom     := rational | var | 'exp' '(' expr ')' | '(' expr ')' ;
//! var      := ('x'|'y') positive-integer ;
//! rational := integer ['/' positive-integer] ;
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::term::ExpFactor;
use super::{Expr, ExprError, RatExpr, Rational, Var};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    return Err(ExprError::Unsupported {
                        pos: i,
                        msg: "decimal literals are not exact; write a rational p/q".into(),
                    });
                }
                let digits = &text[start..i];
                out.push((Tok::Int(digits.parse().expect("ascii digits")), start));
                continue;
            }
            '.' => {
                return Err(ExprError::Unsupported {
                    pos: i,
                    msg: "decimal literals are not exact; write a rational p/q".into(),
                })
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(ExprError::Syntax {
                    pos: i,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    dim: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<RatExpr, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatExpr, ExprError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.checked_div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatExpr, ExprError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let k = self.exponent()?;
            base = base.pow(k)?;
        }
        Ok(if negate { -base } else { base })
    }

    fn exponent(&mut self) -> Result<i32, ExprError> {
        let pos = self.pos();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Tok::Int(k) => {
                let k = k.to_i32().ok_or_else(|| ExprError::Unsupported {
                    pos,
                    msg: "exponent too large".into(),
                })?;
                Ok(if negative { -k } else { k })
            }
            Tok::LParen => Err(ExprError::Unsupported {
                pos,
                msg: "only integer powers are supported".into(),
            }),
            _ => Err(ExprError::Syntax {
                pos,
                msg: "expected integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<RatExpr, ExprError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(v) => Ok(RatExpr::constant(self.dim, Rational::from_integer(v))),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) if name == "exp" => {
                self.expect(Tok::LParen, "'(' after exp")?;
                let arg_pos = self.pos();
                let arg = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                let exponent = exp_argument(&arg, arg_pos)?;
                Ok(Expr::exp(self.dim, exponent).into())
            }
            Tok::Ident(name) => self.variable(&name, pos),
            Tok::End => Err(ExprError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            other => Err(ExprError::Syntax {
                pos,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }

    fn variable(&self, name: &str, pos: usize) -> Result<RatExpr, ExprError> {
        let (head, digits) = name.split_at(1);
        let ctor: fn(usize) -> Var = match head {
            "x" => Var::X,
            "y" => Var::Y,
            _ => {
                return Err(ExprError::Syntax {
                    pos,
                    msg: format!("unknown identifier '{name}'"),
                })
            }
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ExprError::Syntax {
                pos,
                msg: format!("malformed variable '{name}'"),
            });
        }
        let index: usize = digits.parse().map_err(|_| ExprError::Index {
            pos,
            index: usize::MAX,
            dim: self.dim,
        })?;
        if index == 0 || index > self.dim {
            return Err(ExprError::Index {
                pos,
                index,
                dim: self.dim,
            });
        }
        Ok(RatExpr::var(self.dim, ctor(index - 1)))
    }
}

fn exp_argument(arg: &RatExpr, pos: usize) -> Result<ExpFactor, ExprError> {
    let unsupported = |msg: &str| ExprError::Unsupported {
        pos,
        msg: msg.into(),
    };
    if !arg.is_polynomial() {
        return Err(unsupported("exp argument must be a polynomial in x"));
    }
    let mut poly = BTreeMap::new();
    for t in arg.num().terms() {
        if !t.exp.is_one() {
            return Err(unsupported("nested exp is not supported"));
        }
        if t.mono.y_degree() > 0 {
            return Err(unsupported("exp argument may not depend on y"));
        }
        poly.insert(t.mono.x_exponents().to_vec(), t.coeff.clone());
    }
    Ok(ExpFactor::from_poly(poly))
}

/// Parses `text` into canonical form on a manifold of dimension `dim`.
pub fn parse_expr(text: &str, dim: usize) -> Result<RatExpr, ExprError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, dim };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("trailing input");
    }
    Ok(e)
}
