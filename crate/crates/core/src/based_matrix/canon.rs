use super::{BasedMatrix, Flavor};

/// Per-element invariant under permutations of the middle elements.
type Signature = (i64, i64, Vec<i64>);

struct Search<'a> {
    m: &'a BasedMatrix,
    sigs: Vec<Signature>,
    twins: Vec<Vec<bool>>,
    best: Option<(Vec<i64>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, perm: &mut Vec<usize>, rest: &mut Vec<usize>, seq: &mut Vec<i64>) {
        if rest.is_empty() {
            if self.best.as_ref().is_none_or(|(b, _)| seq[..] < b[..]) {
                self.best = Some((seq.clone(), perm.clone()));
            }
            return;
        }
        let min_sig = rest.iter().map(|&g| &self.sigs[g]).min().cloned().expect("nonempty");
        let cands: Vec<usize> = rest.iter().copied().filter(|&g| self.sigs[g] == min_sig).collect();
        let mut tried: Vec<usize> = Vec::new();
        for g in cands {
            if tried.iter().any(|&t| self.twins[t][g]) {
                continue;
            }
            tried.push(g);
            let mark = seq.len();
            seq.extend(perm.iter().map(|&p| self.m.entry(p, g)));
            if let Some((b, _)) = &self.best {
                if seq[..] > b[..seq.len()] {
                    seq.truncate(mark);
                    continue;
                }
            }
            let pos = rest.iter().position(|&x| x == g).expect("present");
            rest.remove(pos);
            perm.push(g);
            self.run(perm, rest, seq);
            perm.pop();
            rest.insert(pos, g);
            seq.truncate(mark);
        }
    }
}

impl BasedMatrix {
    fn signature(&self, g: usize) -> Signature {
        let mut row = self.rows[g].clone();
        row.sort_unstable();
        (self.entry(0, g), self.d_index().map_or(0, |d| self.entry(d, g)), row)
    }

    /// Interchangeable elements: identical rows apart from each other, and
    /// unlinked.
    fn twins(&self, a: usize, b: usize) -> bool {
        self.entry(a, b) == 0 && (0..self.n()).all(|h| h == a || h == b || self.entry(a, h) == self.entry(b, h))
    }

    /// Canonical representative of the isomorphism class fixing `s` and `d`.
    pub fn canonical_form(&self) -> BasedMatrix {
        let n = self.n();
        let sigs = (0..n).map(|g| self.signature(g)).collect();
        let twins = (0..n).map(|a| (0..n).map(|b| a != b && self.twins(a, b)).collect()).collect();
        let mut search = Search { m: self, sigs, twins, best: None };
        let mut rest: Vec<usize> = self.middle().collect();
        search.run(&mut Vec::new(), &mut rest, &mut Vec::new());
        let (_, mid) = search.best.expect("search visits at least one leaf");
        let mut perm = vec![0];
        perm.extend(mid);
        perm.extend(self.d_index());
        self.permuted(&perm)
    }

    /// String key of the canonical form.
    pub fn canonical_key(&self) -> String {
        let c = self.canonical_form();
        let rows: Vec<String> =
            c.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
        let flavor = match self.flavor {
            Flavor::Unframed => 'u',
            Flavor::Framed => 'f',
        };
        format!("{flavor}{}:{}", if self.singular { "s" } else { "" }, rows.join(";"))
    }
}
