use thiserror::Error;

use super::{Connective, Formula, Language, Node};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("connective {connective} at {position} is not part of language {language}")]
    Language {
        position: usize,
        connective: Connective,
        language: Language,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    LParen,
    RParen,
    Imp,
    Iff,
    CondArrow,
    Or,
    And,
    Not,
    Box,
    BoxI,
    BoxM,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::CondArrow => "`~>`".into(),
            Tok::Or => "`|`".into(),
            Tok::And => "`&`".into(),
            Tok::Not => "`~`".into(),
            Tok::Box => "`[]`".into(),
            Tok::BoxI => "`[I]`".into(),
            Tok::BoxM => "`[M]`".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let rest = &input[i..];
        let fixed: &[(&str, Tok)] = &[
            ("<->", Tok::Iff),
            ("->", Tok::Imp),
            ("~>", Tok::CondArrow),
            ("~", Tok::Not),
            ("|", Tok::Or),
            ("&", Tok::And),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("[]", Tok::Box),
            ("[I]", Tok::BoxI),
            ("[M]", Tok::BoxM),
        ];
        if let Some((s, t)) = fixed.iter().find(|(s, _)| rest.starts_with(s)) {
            out.push((i, t.clone()));
            i += s.len();
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &input[start..i];
            let tok = match word {
                "true" => Tok::True,
                "false" => Tok::False,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((start, tok));
            continue;
        }
        let ch = rest.chars().next().unwrap_or('?');
        return Err(ParseError::Syntax {
            position: i,
            message: format!("unexpected character `{ch}`"),
        });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    lang: Language,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn require(&self, c: Connective, position: usize) -> Result<(), ParseError> {
        if self.lang.admits(c) {
            Ok(())
        } else {
            Err(ParseError::Language {
                position,
                connective: c,
                language: self.lang,
            })
        }
    }

    fn imp(&mut self) -> Result<Node, ParseError> {
        let lhs = self.iff()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.imp()?;
            return Ok(Node::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn iff(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.cond()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.cond()?;
            lhs = Node::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn cond(&mut self) -> Result<Node, ParseError> {
        let lhs = self.disj()?;
        let at = self.offset();
        if self.eat(&Tok::CondArrow) {
            self.require(Connective::Cond, at)?;
            let rhs = self.cond()?;
            return Ok(Node::cond(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.conj()?;
        while self.eat(&Tok::Or) {
            let rhs = self.conj()?;
            lhs = Node::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Node::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        let at = self.offset();
        let wrap: fn(Node) -> Node = match self.peek() {
            Some(Tok::Not) => Node::neg,
            Some(Tok::Box) => {
                self.require(Connective::Box, at)?;
                Node::boxed
            }
            Some(Tok::BoxI) => {
                self.require(Connective::BoxI, at)?;
                Node::box_i
            }
            Some(Tok::BoxM) => {
                self.require(Connective::BoxM, at)?;
                Node::box_m
            }
            _ => return self.atom(),
        };
        self.pos += 1;
        Ok(wrap(self.unary()?))
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.error("unexpected end of input")),
        };
        match tok {
            Tok::True => {
                self.pos += 1;
                Ok(Node::top())
            }
            Tok::False => {
                self.pos += 1;
                Ok(Node::Bot)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                Ok(Node::Var(name))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.imp()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            other => Err(self.error(format!("unexpected {}", other.describe()))),
        }
    }
}

/// Parse `input` as a formula of `lang`.
pub fn parse(input: &str, lang: Language) -> Result<Formula, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
        lang,
    };
    let root = p.imp()?;
    if let Some(t) = p.peek() {
        return Err(p.error(format!("unexpected {} after formula", t.describe())));
    }
    Ok(Formula {
        language: lang,
        root,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cond(s: &str) -> Node {
        parse(s, Language::Cond).unwrap().into_root()
    }

    #[test]
    fn precedence_and_associativity() {
        let p = || Node::var("p");
        let q = || Node::var("q");
        let r = || Node::var("r");
        assert_eq!(cond("p -> q -> r"), Node::imp(p(), Node::imp(q(), r())));
        assert_eq!(cond("p ~> q ~> r"), Node::cond(p(), Node::cond(q(), r())));
        assert_eq!(cond("p | q | r"), Node::or(Node::or(p(), q()), r()));
        assert_eq!(cond("p & q ~> r"), Node::cond(Node::and(p(), q()), r()));
        assert_eq!(cond("p ~> q -> r"), Node::imp(Node::cond(p(), q()), r()));
        assert_eq!(cond("~p & q"), Node::and(Node::neg(p()), q()));
        assert_eq!(
            cond("p <-> q <-> r"),
            Node::iff(Node::iff(p(), q()), r())
        );
    }

    #[test]
    fn identifiers_and_keywords() {
        assert_eq!(cond("true_1"), Node::var("true_1"));
        assert_eq!(cond("_x9"), Node::var("_x9"));
        assert_eq!(cond("false"), Node::Bot);
    }

    #[test]
    fn reports_positions() {
        match parse("p & ", Language::Cond) {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match parse("p $ q", Language::Cond) {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        match parse("(p", Language::Cond) {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_foreign_connectives() {
        assert!(matches!(
            parse("q -> []q", Language::Cond),
            Err(ParseError::Language { position: 5, connective: Connective::Box, .. })
        ));
        assert!(matches!(
            parse("p ~> q", Language::Modal),
            Err(ParseError::Language { connective: Connective::Cond, .. })
        ));
        assert!(parse("[I][M]q", Language::Bimodal).is_ok());
        assert!(parse("[]q", Language::Bimodal).is_err());
    }
}
