//! Recursive-descent parser for the ASCII formula syntax.

use super::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Top,
    Bot,
    Var(u32),
    Not,
    And,
    Or,
    Imp,
    Box,
    Dia,
    Rhd,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(self) -> String {
        match self {
            Tok::Top => "'T'".into(),
            Tok::Bot => "'F'".into(),
            Tok::Var(i) => format!("'p{i}'"),
            Tok::Not => "'~'".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Imp => "'->'".into(),
            Tok::Box => "'[]'".into(),
            Tok::Dia => "'<>'".into(),
            Tok::Rhd => "'|>'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let next = chars.get(i + 1).copied();
        let (tok, width) = match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                column += 1;
                i += 1;
                continue;
            }
            'T' => (Tok::Top, 1),
            'F' => (Tok::Bot, 1),
            '~' => (Tok::Not, 1),
            '&' => (Tok::And, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '|' if next == Some('>') => (Tok::Rhd, 2),
            '|' => (Tok::Or, 1),
            '-' if next == Some('>') => (Tok::Imp, 2),
            '[' if next == Some(']') => (Tok::Box, 2),
            '<' if next == Some('>') => (Tok::Dia, 2),
            'p' => {
                let digits: String = chars[i + 1..]
                    .iter()
                    .take_while(|c| c.is_ascii_digit())
                    .collect();
                if digits.is_empty() {
                    return Err(syntax(line, column, "expected digits after 'p'"));
                }
                let index = digits
                    .parse::<u32>()
                    .map_err(|_| syntax(line, column, "variable index too large"))?;
                (Tok::Var(index), 1 + digits.len())
            }
            other => {
                return Err(syntax(line, column, format!("unexpected character '{other}'")));
            }
        };
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_col,
        });
        i += width;
        column += width;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Spanned {
        self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos];
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        let t = self.peek();
        syntax(
            t.line,
            t.column,
            format!("expected {wanted}, found {}", t.tok.describe()),
        )
    }

    // imp := rhd ('->' imp)?
    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.interpretability()?;
        if self.peek().tok == Tok::Imp {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    // rhd := or ('|>' or)?
    fn interpretability(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.peek().tok == Tok::Rhd {
            self.bump();
            let rhs = self.disjunction()?;
            let t = self.peek();
            if t.tok == Tok::Rhd {
                return Err(syntax(
                    t.line,
                    t.column,
                    "'|>' is non-associative; parenthesize chained '|>'",
                ));
            }
            return Ok(Formula::rhd(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut acc = self.conjunction()?;
        while self.peek().tok == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().tok {
            Tok::Not => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::Box => {
                self.bump();
                Ok(Formula::boxed(self.unary()?))
            }
            Tok::Dia => {
                self.bump();
                Ok(Formula::dia(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().tok {
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Var(i) => {
                self.bump();
                Ok(Formula::Var(i))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.implication()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }
}

/// Parses one formula; the whole input must be consumed.
pub fn parse(text: &str) -> Result<Formula> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = parser.implication()?;
    if parser.peek().tok != Tok::Eof {
        return Err(parser.unexpected("end of input"));
    }
    Ok(f)
}
