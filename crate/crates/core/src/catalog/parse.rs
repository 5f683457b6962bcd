use super::field::prime_power;
use super::GroupSpec;
use crate::error::{Error, Result};
use crate::groupcore::Permutation;

fn err<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        position,
        message: message.into(),
    })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, prefix: &str) -> bool {
        if self.rest().starts_with(prefix) {
            self.pos += prefix.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, prefix: &str) -> Result<()> {
        if self.eat(prefix) {
            Ok(())
        } else {
            err(self.pos, format!("expected `{prefix}`"))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return err(start, "expected an integer");
        }
        self.pos += len;
        self.src[start..self.pos]
            .parse()
            .or_else(|_| err(start, "integer out of range"))
    }

    fn small(&mut self) -> Result<usize> {
        let start = self.pos;
        let n = self.number()?;
        usize::try_from(n)
            .ok()
            .filter(|&n| n <= u16::MAX as usize)
            .map_or_else(|| err(start, "integer out of range"), Ok)
    }

    fn factor(&mut self) -> Result<GroupSpec> {
        let start = self.pos;
        // longer names first so `C2cubeByC3` is not read as `C2`
        if self.eat("C2cubeByC3") {
            return Ok(GroupSpec::C2cubeByC3);
        }
        if self.eat("G288") {
            return Ok(GroupSpec::G288);
        }
        if self.eat("Q8") {
            return Ok(GroupSpec::Q8);
        }
        if self.eat("SL2:") {
            let at = self.pos;
            let q = self.number()?;
            if prime_power(q).is_none() {
                return err(at, format!("{q} is not a prime power"));
            }
            return Ok(GroupSpec::SL2(q));
        }
        if self.eat("Dih:") {
            return Ok(GroupSpec::Dih(self.small()?));
        }
        if self.eat("EA:") {
            let at = self.pos;
            let p = self.number()?;
            if !crate::groupcore::is_prime(p) {
                return err(at, format!("{p} is not prime"));
            }
            self.expect(":")?;
            let at = self.pos;
            let k = self.number()?;
            let k = u32::try_from(k).or_else(|_| err(at, "integer out of range"))?;
            return Ok(GroupSpec::ElemAb { p, k });
        }
        if self.eat("perm:") {
            return self.perm();
        }
        for (name, make) in [
            ("S", GroupSpec::Sym as fn(usize) -> GroupSpec),
            ("A", GroupSpec::Alt),
            ("C", GroupSpec::Cyc),
        ] {
            if self.rest().starts_with(name)
                && self.rest()[1..].starts_with(|c: char| c.is_ascii_digit())
            {
                self.pos += 1;
                return Ok(make(self.small()?));
            }
        }
        err(start, "unknown group constructor")
    }

    fn perm(&mut self) -> Result<GroupSpec> {
        self.expect("[")?;
        let mut raw: Vec<Vec<Vec<usize>>> = Vec::new();
        loop {
            let mut cycles = Vec::new();
            let gen_start = self.pos;
            while self.eat("(") {
                let mut cycle = Vec::new();
                while !self.eat(")") {
                    if !cycle.is_empty() {
                        self.expect(" ")?;
                    }
                    cycle.push(self.small()?);
                }
                cycles.push((self.pos, cycle));
            }
            if cycles.is_empty() {
                return err(gen_start, "expected a cycle");
            }
            raw.push(cycles.into_iter().map(|(_, c)| c).collect());
            if self.eat("]") {
                break;
            }
            self.expect(",")?;
        }
        let degree = raw
            .iter()
            .flatten()
            .flatten()
            .map(|&x| x + 1)
            .max()
            .unwrap_or(1);
        let generators = raw
            .iter()
            .map(|cycles| {
                let cycles: Vec<Vec<usize>> =
                    cycles.iter().filter(|c| !c.is_empty()).cloned().collect();
                Permutation::from_cycles(degree, &cycles)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Parse {
                position: self.pos,
                message: e.to_string(),
            })?;
        Ok(GroupSpec::Perm { degree, generators })
    }
}

/// Parses the group-spec grammar described in the module docs.
pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser { src: text, pos: 0 };
    let mut spec = p.factor()?;
    while p.eat("x") {
        let rhs = p.factor()?;
        spec = GroupSpec::Product(Box::new(spec), Box::new(rhs));
    }
    if p.pos != text.len() {
        return err(p.pos, "unexpected trailing input");
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn position(s: &str) -> usize {
        match parse_spec(s) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        }
    }

    #[test]
    fn leaves() {
        assert_eq!(parse_spec("A5").unwrap(), GroupSpec::Alt(5));
        assert_eq!(parse_spec("S10").unwrap(), GroupSpec::Sym(10));
        assert_eq!(parse_spec("C2cubeByC3").unwrap(), GroupSpec::C2cubeByC3);
        assert_eq!(parse_spec("EA:2:3").unwrap(), GroupSpec::ElemAb { p: 2, k: 3 });
        assert_eq!(parse_spec("SL2:9").unwrap(), GroupSpec::SL2(9));
    }

    #[test]
    fn products_are_left_associative() {
        let s = parse_spec("S3xS3").unwrap();
        assert_eq!(
            s,
            GroupSpec::Product(Box::new(GroupSpec::Sym(3)), Box::new(GroupSpec::Sym(3)))
        );
        match parse_spec("C2xC3xC5").unwrap() {
            GroupSpec::Product(a, b) => {
                assert!(matches!(*a, GroupSpec::Product(..)));
                assert_eq!(*b, GroupSpec::Cyc(5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn raw_generators() {
        let GroupSpec::Perm { degree, generators } =
            parse_spec("perm:[(0 1 2),(0 1)(2 3)]").unwrap()
        else {
            panic!()
        };
        assert_eq!(degree, 4);
        assert_eq!(generators.len(), 2);
        assert_eq!(generators[1].to_string(), "(0 1)(2 3)");
        assert!(parse_spec("perm:[()]").is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(position("B5"), 0);
        assert_eq!(position("S3xQ9"), 3);
        assert_eq!(position("SL2:6"), 4);
        assert_eq!(position("EA:4:2"), 3);
        assert_eq!(position("Dih:"), 4);
        assert_eq!(position("A5 "), 2);
        assert_eq!(position("S99999999999999999999999"), 1);
        assert!(matches!(parse_spec("perm:[(0 1),(1 1)]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec("perm:[(0 1]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec(""), Err(Error::Parse { position: 0, .. })));
    }
}
