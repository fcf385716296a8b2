use std::collections::BTreeMap;
use std::io::{Read, Write};

use rayon::prelude::*;

use crate::entanglement::{concurrence, partial_trace_pair};
use crate::error::{Error, Result};
use crate::thermal::{DensityMatrix, Temperature};

use super::scenario::Scenario;

/// One concurrence value at one grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub j: f64,
    pub couplings: Vec<f64>,
    /// 0 is the ground-multiplet limit.
    pub temperature: f64,
    pub pair: (usize, usize),
    pub concurrence: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub scenario: String,
    pub n: usize,
    pub j_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    pub pairs: Vec<(usize, usize)>,
    /// Sorted by `(J, T, pair)`.
    pub rows: Vec<SweepRow>,
}

/// One line of the sweep CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvRecord {
    pub scenario: String,
    pub couplings: Vec<f64>,
    pub temperature: f64,
    pub pair: (usize, usize),
    pub concurrence: f64,
}

/// Lowest grid temperature at which a concurrence has fallen to the threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayThreshold {
    pub j: f64,
    pub pair: (usize, usize),
    pub temperature: Option<f64>,
}

/// Diagonalizes once per `J` and evaluates every temperature and pair.
///
/// Grid points run in parallel; rows come back sorted by `(J, T, pair)`, so
/// the output does not depend on scheduling.
pub fn run_sweep(s: &Scenario, j_grid: &[f64], t_grid: &[f64]) -> Result<SweepResult> {
    if j_grid.is_empty() || t_grid.is_empty() {
        return Err(Error::input("sweep grids must be nonempty"));
    }
    if let Some(j) = j_grid.iter().find(|j| !j.is_finite() || **j < 0.0) {
        return Err(Error::input(format!(
            "J grid value {j} must be finite and >= 0"
        )));
    }
    let temps = t_grid
        .iter()
        .map(|&t| Temperature::new(t))
        .collect::<Result<Vec<_>>>()?;
    for &(i, j) in &s.pairs {
        if !(1 <= i && i < j && j <= s.n) {
            return Err(Error::input(format!(
                "pair ({i}, {j}) outside a {}-site chain",
                s.n
            )));
        }
    }

    let chunks = j_grid
        .par_iter()
        .map(|&j| -> Result<Vec<SweepRow>> {
            let at = |t: Option<f64>| {
                move |e: Error| Error::GridPoint {
                    j,
                    temperature: t,
                    source: Box::new(e),
                }
            };
            let chain = s.chain(j).map_err(at(None))?;
            let spectrum = chain.spectrum().map_err(at(None))?;
            let mut rows = Vec::with_capacity(temps.len() * s.pairs.len());
            for &t in &temps {
                let rho = DensityMatrix::thermal(&spectrum, t).map_err(at(Some(t.value())))?;
                for &pair in &s.pairs {
                    let c = partial_trace_pair(&rho, pair.0, pair.1)
                        .and_then(|r| concurrence(&r))
                        .map_err(at(Some(t.value())))?;
                    rows.push(SweepRow {
                        j,
                        couplings: chain.site_factors().to_vec(),
                        temperature: t.value(),
                        pair,
                        concurrence: c.value,
                    });
                }
            }
            Ok(rows)
        })
        .collect::<Vec<_>>();

    let mut rows = Vec::with_capacity(j_grid.len() * t_grid.len() * s.pairs.len());
    for chunk in chunks {
        rows.extend(chunk?);
    }
    rows.sort_by(|a, b| {
        a.j.total_cmp(&b.j)
            .then(a.temperature.total_cmp(&b.temperature))
            .then(a.pair.cmp(&b.pair))
    });
    Ok(SweepResult {
        scenario: s.name.clone(),
        n: s.n,
        j_grid: j_grid.to_vec(),
        t_grid: t_grid.to_vec(),
        pairs: s.pairs.clone(),
        rows,
    })
}

impl SweepResult {
    /// Concurrence at an exact grid point.
    pub fn get(&self, j: f64, temperature: f64, pair: (usize, usize)) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.j == j && r.temperature == temperature && r.pair == pair)
            .map(|r| r.concurrence)
    }

    /// Rows grouped by grid point, in `(J, T)` order.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut out: Vec<GridPoint> = Vec::new();
        for r in &self.rows {
            match out.last_mut() {
                Some(p) if p.j == r.j && p.temperature == r.temperature => {
                    p.values.insert(r.pair, r.concurrence);
                }
                _ => out.push(GridPoint {
                    j: r.j,
                    temperature: r.temperature,
                    values: BTreeMap::from([(r.pair, r.concurrence)]),
                }),
            }
        }
        out
    }

    pub fn records(&self) -> Vec<CsvRecord> {
        self.rows
            .iter()
            .map(|r| CsvRecord {
                scenario: self.scenario.clone(),
                couplings: r.couplings.clone(),
                temperature: r.temperature,
                pair: r.pair,
                concurrence: r.concurrence,
            })
            .collect()
    }

    /// `scenario,n,J1,...,Jn,temperature,pair_i,pair_j,concurrence`
    pub fn csv_header(&self) -> Vec<String> {
        csv_header(self.n)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.csv_header())?;
        for rec in self.records() {
            let mut fields = vec![rec.scenario, self.n.to_string()];
            fields.extend(rec.couplings.iter().map(|x| fmt_num(*x)));
            fields.push(fmt_num(rec.temperature));
            fields.push(rec.pair.0.to_string());
            fields.push(rec.pair.1.to_string());
            fields.push(fmt_num(rec.concurrence));
            w.write_record(&fields)?;
        }
        w.flush()?;
        Ok(())
    }

    /// For every `(J, pair)`, the lowest positive grid temperature at which
    /// the concurrence is at or below `threshold`.
    pub fn decay_thresholds(&self, threshold: f64) -> Vec<DecayThreshold> {
        let mut temps: Vec<f64> = self.t_grid.iter().copied().filter(|t| *t > 0.0).collect();
        temps.sort_by(f64::total_cmp);
        let mut js = self.j_grid.clone();
        js.sort_by(f64::total_cmp);
        js.dedup();
        let mut out = Vec::new();
        for &j in &js {
            for &pair in &self.pairs {
                let temperature = temps
                    .iter()
                    .copied()
                    .find(|&t| self.get(j, t, pair).is_some_and(|c| c <= threshold));
                out.push(DecayThreshold {
                    j,
                    pair,
                    temperature,
                });
            }
        }
        out
    }

    pub fn write_decay_csv<W: Write>(&self, out: W, threshold: f64) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["scenario", "J", "pair_i", "pair_j", "decay_temperature"])?;
        for d in self.decay_thresholds(threshold) {
            w.write_record([
                self.scenario.clone(),
                fmt_num(d.j),
                d.pair.0.to_string(),
                d.pair.1.to_string(),
                d.temperature.map(fmt_num).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Concurrences of every reported pair at one `(J, T)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPoint {
    pub j: f64,
    pub temperature: f64,
    pub values: BTreeMap<(usize, usize), f64>,
}

impl GridPoint {
    pub fn c(&self, i: usize, j: usize) -> f64 {
        self.values[&(i, j)]
    }
}

pub fn csv_header(n: usize) -> Vec<String> {
    let mut h = vec!["scenario".to_string(), "n".to_string()];
    h.extend((1..=n).map(|k| format!("J{k}")));
    h.extend(["temperature", "pair_i", "pair_j", "concurrence"].map(String::from));
    h
}

/// Shortest decimal string that parses back to the same `f64`, in exponent
/// form for magnitudes outside `[1e-4, 1e15)`.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) || !a.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Parses a sweep CSV written by [`SweepResult::write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    let n = header.len().saturating_sub(6);
    let expected = csv_header(n);
    if header.iter().ne(expected.iter().map(String::as_str)) {
        return Err(Error::input(format!(
            "unexpected sweep header '{}'",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let num = |s: &str| -> Result<f64> {
        s.parse()
            .map_err(|_| Error::input(format!("bad number '{s}' in sweep csv")))
    };
    let int = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::input(format!("bad integer '{s}' in sweep csv")))
    };
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        if int(&rec[1])? != n {
            return Err(Error::input("qubit count column disagrees with the header"));
        }
        out.push(CsvRecord {
            scenario: rec[0].to_string(),
            couplings: (0..n).map(|k| num(&rec[2 + k])).collect::<Result<_>>()?,
            temperature: num(&rec[2 + n])?,
            pair: (int(&rec[3 + n])?, int(&rec[4 + n])?),
            concurrence: num(&rec[5 + n])?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [
            0.0,
            1.0,
            0.1,
            1.0 / 3.0,
            8.326672684688674e-17,
            -2.5e-9,
            3e20,
            1e-4,
        ] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_num(8.326672684688674e-17), "8.326672684688674e-17");
        assert_eq!(fmt_num(0.05), "0.05");
    }

    #[test]
    fn three_qubit_middle_impurity() {
        let s = Scenario::single_impurity(3, 2).unwrap();
        let res = run_sweep(&s, &[1.0], &[0.0]).unwrap();
        let expect = 0.5f64.sqrt() - 0.25;
        assert!((res.get(1.0, 0.0, (1, 2)).unwrap() - expect).abs() < 1e-12);
        assert!(res.get(1.0, 0.0, (1, 3)).unwrap() < 1e-12);
    }

    #[test]
    fn four_qubit_next_nearest_vanish() {
        let s = Scenario::single_impurity(4, 1).unwrap();
        let res = run_sweep(&s, &[1.0], &[0.0]).unwrap();
        assert!(res.get(1.0, 0.0, (1, 3)).unwrap() < 1e-12);
        assert!(res.get(1.0, 0.0, (2, 4)).unwrap() < 1e-12);
    }

    #[test]
    fn hot_chains_are_separable() {
        for s in [
            Scenario::single_impurity(3, 1).unwrap(),
            Scenario::boundary(4).unwrap(),
            Scenario::named("six-qubit", None).unwrap(),
        ] {
            let res = run_sweep(&s, &[0.3, 2.0], &[1e9]).unwrap();
            assert!(res.rows.iter().all(|r| r.concurrence == 0.0));
        }
    }

    #[test]
    fn row_count_and_order() {
        let s = Scenario::named("fig4", None).unwrap();
        let js = linspace_for_test();
        let res = run_sweep(&s, &js, &[0.1, 0.0]).unwrap();
        assert_eq!(res.rows.len(), js.len() * 2 * 4);
        assert_eq!(res.rows[0].temperature, 0.0);
        assert_eq!(res.rows[0].pair, (1, 2));
        assert_eq!(res.rows[3].pair, (3, 4));
        assert!(res
            .rows
            .iter()
            .all(|r| (0.0..=1.0).contains(&r.concurrence)));
        assert_eq!(res.points().len(), js.len() * 2);
    }

    fn linspace_for_test() -> Vec<f64> {
        vec![2.0, 0.0, 0.5]
    }

    #[test]
    fn rejects_bad_grids() {
        let s = Scenario::boundary(4).unwrap();
        assert!(run_sweep(&s, &[], &[0.0]).is_err());
        assert!(run_sweep(&s, &[1.0], &[]).is_err());
        assert!(run_sweep(&s, &[-1.0], &[0.0]).is_err());
        assert!(run_sweep(&s, &[1.0], &[-0.1]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let s = Scenario::named("fig5", None).unwrap();
        let res = run_sweep(&s, &[0.1, 0.35, 1.0], &[0.0, 0.05]).unwrap();
        let mut buf = Vec::new();
        res.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("scenario,n,J1,J2,J3,J4,temperature,pair_i,pair_j,concurrence\n"));
        assert_eq!(read_csv(buf.as_slice()).unwrap(), res.records());
    }

    #[test]
    fn csv_reader_rejects_foreign_files() {
        assert!(read_csv("a,b,c\n1,2,3\n".as_bytes()).is_err());
    }

    #[test]
    fn decay_thresholds_find_first_crossing() {
        let s = Scenario::single_impurity(3, 2).unwrap();
        let res = run_sweep(&s, &[1.0], &[0.0, 0.01, 0.1, 1.0, 10.0]).unwrap();
        let d = res.decay_thresholds(0.01);
        let c12 = d.iter().find(|d| d.pair == (1, 2)).unwrap();
        let t = c12.temperature.unwrap();
        assert!(res.get(1.0, t, (1, 2)).unwrap() <= 0.01);
        assert!(res.get(1.0, 0.01, (1, 2)).unwrap() > 0.01);
        let c13 = d.iter().find(|d| d.pair == (1, 3)).unwrap();
        assert_eq!(c13.temperature, Some(0.01));
    }
}
