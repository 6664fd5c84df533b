use crate::error::{Error, Result};
use crate::owl::{
    Annotation, AnnotationValue, Axiom, ClassExpression, Entity, EntityKind, Iri, Literal, Ontology,
};
use crate::serializer::{check_declared, ordered_axioms, quote_literal, SerializationConfig, ShortNames, SortOrder};

/// Writes `Prefix(...)` lines, then `Ontology(<iri>`, one axiom per line,
/// and a closing `)`.
pub fn to_functional(ont: &Ontology, cfg: &SerializationConfig) -> Result<String> {
    check_declared(ont)?;
    let names = ShortNames::new(ont);
    let mut out = format!("Prefix(:=<{}>)\n", ont.namespace());
    for (prefix, ns) in ont.prefixes() {
        out.push_str(&format!("Prefix({prefix}:=<{ns}>)\n"));
    }
    out.push_str(&format!("Ontology(<{}>\n", ont.iri()));
    let canonical = cfg.sort == SortOrder::Canonical;
    for axiom in ordered_axioms(ont, cfg) {
        out.push_str(&render_axiom(&names, axiom, canonical));
        out.push('\n');
    }
    out.push_str(")\n");
    Ok(out)
}

/// One axiom in functional syntax, abbreviated against `ont`.
pub fn functional_axiom(ont: &Ontology, axiom: &Axiom) -> String {
    render_axiom(&ShortNames::new(ont), axiom, false)
}

pub(crate) fn render_axiom(names: &ShortNames, axiom: &Axiom, canonical: bool) -> String {
    let iri = |i: &Iri| names.render(i, ":");
    let ce = |e: &ClassExpression| render_expr(names, e);
    match axiom {
        Axiom::Declaration(Entity { kind, iri: i }) => format!("Declaration({kind}({}))", iri(i)),
        Axiom::SubClassOf { sub, sup } => format!("SubClassOf({} {})", ce(sub), ce(sup)),
        Axiom::EquivalentClasses(ms) => format!("EquivalentClasses({})", members(names, ms, canonical)),
        Axiom::DisjointClasses(ms) => format!("DisjointClasses({})", members(names, ms, canonical)),
        Axiom::FunctionalObjectProperty(p) => format!("FunctionalObjectProperty({})", iri(p)),
        Axiom::AnnotationAssertion {
            subject,
            annotation: Annotation { property, value },
        } => {
            let value = match value {
                AnnotationValue::Iri(v) => iri(v),
                AnnotationValue::Literal(l) => render_literal(names, l),
            };
            format!("AnnotationAssertion({} {} {value})", iri(property), iri(subject))
        }
    }
}

fn members(names: &ShortNames, ms: &[ClassExpression], canonical: bool) -> String {
    let mut rendered: Vec<String> = ms.iter().map(|m| render_expr(names, m)).collect();
    if canonical {
        rendered.sort();
    }
    rendered.join(" ")
}

fn render_literal(names: &ShortNames, l: &Literal) -> String {
    let mut out = quote_literal(l.lexical());
    if let Some(lang) = l.lang() {
        out.push('@');
        out.push_str(lang);
    } else if let Some(dt) = l.datatype() {
        out.push_str("^^");
        out.push_str(&names.render(dt, ":"));
    }
    out
}

fn render_expr(names: &ShortNames, e: &ClassExpression) -> String {
    match e {
        ClassExpression::Named(i) => names.render(i, ":"),
        ClassExpression::SomeValuesFrom { property, filler } => format!(
            "ObjectSomeValuesFrom({} {})",
            names.render(property, ":"),
            render_expr(names, filler)
        ),
        ClassExpression::AllValuesFrom { property, filler } => format!(
            "ObjectAllValuesFrom({} {})",
            names.render(property, ":"),
            render_expr(names, filler)
        ),
        ClassExpression::IntersectionOf(ops) => format!("ObjectIntersectionOf({})", members(names, ops, false)),
        ClassExpression::UnionOf(ops) => format!("ObjectUnionOf({})", members(names, ops, false)),
        ClassExpression::ExactCardinality { n, property, filler } => format!(
            "ObjectExactCardinality({n} {} {})",
            names.render(property, ":"),
            render_expr(names, filler)
        ),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Word(String),
    Iri(String),
    Literal {
        lexical: String,
        lang: Option<String>,
        datatype: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq)]
enum Term {
    Word(String),
    Iri(String),
    Literal {
        lexical: String,
        lang: Option<String>,
        datatype: Option<String>,
    },
    Call(String, Vec<Term>),
}

struct LineReader<'a> {
    line: usize,
    text: &'a str,
}

impl LineReader<'_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Read {
            line: self.line,
            message: message.into(),
        })
    }

    fn tokens(&self) -> Result<Vec<Token>> {
        let mut out = Vec::new();
        let mut chars = self.text.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            match c {
                c if c.is_whitespace() => {
                    chars.next();
                }
                '(' => {
                    chars.next();
                    out.push(Token::Open);
                }
                ')' => {
                    chars.next();
                    out.push(Token::Close);
                }
                '<' => {
                    chars.next();
                    let mut iri = String::new();
                    loop {
                        match chars.next() {
                            Some((_, '>')) => break,
                            Some((_, c)) => iri.push(c),
                            None => return self.error(format!("unterminated IRI at column {}", start + 1)),
                        }
                    }
                    out.push(Token::Iri(iri));
                }
                '"' => {
                    chars.next();
                    let mut lexical = String::new();
                    loop {
                        match chars.next() {
                            Some((_, '"')) => break,
                            Some((_, '\\')) => match chars.next() {
                                Some((_, c @ ('"' | '\\'))) => lexical.push(c),
                                _ => return self.error("invalid escape in literal"),
                            },
                            Some((_, c)) => lexical.push(c),
                            None => return self.error(format!("unterminated literal at column {}", start + 1)),
                        }
                    }
                    let (mut lang, mut datatype) = (None, None);
                    let rest = &self.text[chars.peek().map_or(self.text.len(), |(i, _)| *i)..];
                    if rest.starts_with('@') {
                        chars.next();
                        let mut tag = String::new();
                        while let Some(&(_, c)) = chars.peek() {
                            if c.is_ascii_alphanumeric() || c == '-' {
                                tag.push(c);
                                chars.next();
                            } else {
                                break;
                            }
                        }
                        if tag.is_empty() {
                            return self.error("empty language tag");
                        }
                        lang = Some(tag);
                    } else if rest.starts_with("^^") {
                        chars.next();
                        chars.next();
                        let mut dt = String::new();
                        while let Some(&(_, c)) = chars.peek() {
                            if c.is_whitespace() || c == '(' || c == ')' {
                                break;
                            }
                            dt.push(c);
                            chars.next();
                        }
                        if dt.is_empty() {
                            return self.error("missing datatype after ^^");
                        }
                        datatype = Some(dt);
                    }
                    out.push(Token::Literal {
                        lexical,
                        lang,
                        datatype,
                    });
                }
                _ => {
                    let mut word = String::new();
                    while let Some(&(_, c)) = chars.peek() {
                        if c.is_whitespace() || matches!(c, '(' | ')' | '"' | '<') {
                            break;
                        }
                        word.push(c);
                        chars.next();
                    }
                    out.push(Token::Word(word));
                }
            }
        }
        Ok(out)
    }

    fn term(&self) -> Result<Term> {
        let tokens = self.tokens()?;
        let mut pos = 0;
        let term = self.parse_term(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return self.error("unexpected text after axiom");
        }
        Ok(term)
    }

    fn parse_term(&self, tokens: &[Token], pos: &mut usize) -> Result<Term> {
        let Some(token) = tokens.get(*pos) else {
            return self.error("unexpected end of line");
        };
        *pos += 1;
        match token {
            Token::Open | Token::Close => self.error("unexpected parenthesis"),
            Token::Iri(i) => Ok(Term::Iri(i.clone())),
            Token::Literal {
                lexical,
                lang,
                datatype,
            } => Ok(Term::Literal {
                lexical: lexical.clone(),
                lang: lang.clone(),
                datatype: datatype.clone(),
            }),
            Token::Word(w) => {
                if tokens.get(*pos) != Some(&Token::Open) {
                    return Ok(Term::Word(w.clone()));
                }
                *pos += 1;
                let mut args = Vec::new();
                loop {
                    match tokens.get(*pos) {
                        Some(Token::Close) => {
                            *pos += 1;
                            return Ok(Term::Call(w.clone(), args));
                        }
                        Some(_) => args.push(self.parse_term(tokens, pos)?),
                        None => return self.error(format!("unclosed `{w}(`")),
                    }
                }
            }
        }
    }
}

struct Reader<'a> {
    ont: &'a Ontology,
    line: LineReader<'a>,
}

impl Reader<'_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        self.line.error(message)
    }

    fn wrap<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Read { .. } => e,
            other => Error::Read {
                line: self.line.line,
                message: other.to_string(),
            },
        })
    }

    fn iri(&self, term: &Term) -> Result<Iri> {
        match term {
            Term::Iri(full) => self.wrap(Iri::parse(full)),
            Term::Word(w) if w.contains(':') => self.wrap(self.ont.resolve(w)),
            Term::Word(w) => self.error(format!("expected an IRI, found `{w}`")),
            Term::Call(name, _) => self.error(format!("expected an IRI, found `{name}(...)`")),
            Term::Literal { .. } => self.error("expected an IRI, found a literal"),
        }
    }

    fn args<'t>(&self, name: &str, args: &'t [Term], n: usize) -> Result<&'t [Term]> {
        if args.len() != n {
            return self.error(format!("`{name}` takes {n} arguments, found {}", args.len()));
        }
        Ok(args)
    }

    fn expr(&self, term: &Term) -> Result<ClassExpression> {
        let Term::Call(name, args) = term else {
            return Ok(ClassExpression::Named(self.iri(term)?));
        };
        let exprs = |args: &[Term]| args.iter().map(|a| self.expr(a)).collect::<Result<Vec<_>>>();
        Ok(match name.as_str() {
            "ObjectSomeValuesFrom" => {
                let a = self.args(name, args, 2)?;
                ClassExpression::some(self.iri(&a[0])?, self.expr(&a[1])?)
            }
            "ObjectAllValuesFrom" => {
                let a = self.args(name, args, 2)?;
                ClassExpression::only(self.iri(&a[0])?, self.expr(&a[1])?)
            }
            "ObjectIntersectionOf" => ClassExpression::IntersectionOf(exprs(args)?),
            "ObjectUnionOf" => ClassExpression::UnionOf(exprs(args)?),
            "ObjectExactCardinality" => {
                let a = self.args(name, args, 3)?;
                let n = match &a[0] {
                    Term::Word(w) => w.parse::<u32>().ok(),
                    _ => None,
                };
                let Some(n) = n else {
                    return self.error("cardinality must be a non-negative integer");
                };
                ClassExpression::exactly(n, self.iri(&a[1])?, self.expr(&a[2])?)
            }
            other => return self.error(format!("unsupported class expression `{other}`")),
        })
    }

    fn axiom(&self, term: &Term) -> Result<Axiom> {
        let Term::Call(name, args) = term else {
            return self.error("expected an axiom");
        };
        let exprs = |args: &[Term]| args.iter().map(|a| self.expr(a)).collect::<Result<Vec<_>>>();
        Ok(match name.as_str() {
            "Declaration" => {
                let a = self.args(name, args, 1)?;
                let Term::Call(kind, inner) = &a[0] else {
                    return self.error("expected an entity in Declaration");
                };
                let kind = match kind.as_str() {
                    "Class" => EntityKind::Class,
                    "ObjectProperty" => EntityKind::ObjectProperty,
                    "AnnotationProperty" => EntityKind::AnnotationProperty,
                    other => return self.error(format!("unsupported entity kind `{other}`")),
                };
                let inner = self.args(kind.to_string().as_str(), inner, 1)?;
                Axiom::Declaration(Entity {
                    kind,
                    iri: self.iri(&inner[0])?,
                })
            }
            "SubClassOf" => {
                let a = self.args(name, args, 2)?;
                Axiom::subclass(self.expr(&a[0])?, self.expr(&a[1])?)
            }
            "EquivalentClasses" => Axiom::EquivalentClasses(exprs(args)?),
            "DisjointClasses" => Axiom::DisjointClasses(exprs(args)?),
            "FunctionalObjectProperty" => {
                let a = self.args(name, args, 1)?;
                Axiom::FunctionalObjectProperty(self.iri(&a[0])?)
            }
            "AnnotationAssertion" => {
                let a = self.args(name, args, 3)?;
                let property = self.iri(&a[0])?;
                let subject = self.iri(&a[1])?;
                let value = match &a[2] {
                    Term::Literal {
                        lexical,
                        lang: Some(lang),
                        ..
                    } => AnnotationValue::Literal(Literal::with_lang(lexical.clone(), lang.clone())),
                    Term::Literal {
                        lexical,
                        datatype: Some(dt),
                        ..
                    } => {
                        let dt = match dt.strip_prefix('<').and_then(|d| d.strip_suffix('>')) {
                            Some(full) => self.iri(&Term::Iri(full.to_string()))?,
                            None => self.iri(&Term::Word(dt.clone()))?,
                        };
                        AnnotationValue::Literal(Literal::typed(lexical.clone(), dt))
                    }
                    Term::Literal { lexical, .. } => AnnotationValue::Literal(Literal::plain(lexical.clone())),
                    other => AnnotationValue::Iri(self.iri(other)?),
                };
                Axiom::AnnotationAssertion {
                    subject,
                    annotation: Annotation { property, value },
                }
            }
            other => return self.error(format!("unsupported axiom `{other}`")),
        })
    }
}

/// Reads back what [`to_functional`] writes. Anything outside that subset
/// is an error carrying the 1-based line number.
pub fn read_functional_subset(text: &str) -> Result<Ontology> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut namespace = None;
    let mut prefixes = Vec::new();
    let read_err = |line: usize, message: String| Error::Read { line, message };

    let (header_line, ontology_iri) = loop {
        let Some((n, line)) = lines.next() else {
            return Err(read_err(text.lines().count().max(1), "missing `Ontology(` header".into()));
        };
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("Prefix(") {
            let parsed = rest
                .strip_suffix(")")
                .and_then(|r| r.split_once(":=<"))
                .and_then(|(p, ns)| ns.strip_suffix('>').map(|ns| (p, ns)));
            let Some((prefix, ns)) = parsed else {
                return Err(read_err(n, format!("malformed prefix declaration `{line}`")));
            };
            if prefix.is_empty() {
                namespace = Some(ns.to_string());
            } else {
                prefixes.push((prefix.to_string(), ns.to_string()));
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("Ontology(") {
            let iri = rest.trim_end_matches(')').trim();
            let Some(iri) = iri.strip_prefix('<').and_then(|i| i.strip_suffix('>')) else {
                return Err(read_err(n, "expected `Ontology(<iri>`".into()));
            };
            break (n, (iri.to_string(), rest.trim_end().ends_with(')')));
        }
        let construct = line.split('(').next().unwrap_or(line);
        return Err(read_err(n, format!("unsupported construct `{construct}` before the Ontology header")));
    };
    let (iri, closed_inline) = ontology_iri;

    let mut ont = Iri::parse(&iri)
        .and_then(|iri| Ontology::new(iri, prefixes))
        .map_err(|e| read_err(header_line, e.to_string()))?;
    if let Some(ns) = namespace {
        ont = ont.with_namespace(&ns).map_err(|e| read_err(header_line, e.to_string()))?;
    }

    let mut closed = closed_inline;
    for (n, line) in lines {
        if line.is_empty() {
            continue;
        }
        if closed {
            return Err(read_err(n, "text after the closing `)`".into()));
        }
        if line == ")" {
            closed = true;
            continue;
        }
        let reader = Reader {
            ont: &ont,
            line: LineReader { line: n, text: line },
        };
        let axiom = reader.line.term().and_then(|t| reader.axiom(&t))?;
        ont.add(axiom).map_err(|e| read_err(n, e.to_string()))?;
    }
    if !closed {
        return Err(read_err(text.lines().count().max(1), "missing closing `)`".into()));
    }
    Ok(ont)
}
