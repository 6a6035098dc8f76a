/// Neumaier's variant of Kahan summation.
///
/// Used for the closed-form brackets whose terms nearly cancel close to the
/// infinite-well limit.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut acc = CompensatedSum::new();
    for t in terms {
        acc.add(t);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_term() {
        let naive: f64 = [1.0e16, 1.0, -1.0e16].iter().sum();
        assert_eq!(naive, 0.0);
        assert_eq!(compensated_sum([1.0e16, 1.0, -1.0e16]), 1.0);
    }
}
