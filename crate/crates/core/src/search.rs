//! Binary-partition ("flashlight") backtracking shared by the maximum
//! enumerators.

use std::ops::ControlFlow;

use crate::error::Result;
use crate::set::{Element, ElementSet};

/// Extension test `(include, exclude, hint)`: returns a full solution
/// containing `include` and avoiding `exclude`, or `None` if there is
/// none. `hint` certifies the parent branch.
pub(crate) type Feasible<'a> = dyn FnMut(&ElementSet, &ElementSet, &ElementSet) -> Result<Option<ElementSet>> + 'a;
pub(crate) type Emit<'a> = dyn FnMut(&ElementSet) -> Result<ControlFlow<()>> + 'a;

/// Decides `elements` in the given order, include-branch first, and
/// descends only into feasible branches. Leaves are emitted as their
/// include sets. `root` is any solution.
///
/// A witness of a branch also certifies whichever child agrees with it on
/// the branching element, so that child is entered without a test; the
/// other child's test receives the witness as a hint.
pub(crate) fn flashlight(
    elements: &[Element],
    root: ElementSet,
    feasible: &mut Feasible<'_>,
    emit: &mut Emit<'_>,
) -> Result<()> {
    struct Search<'f, 'g, 'h> {
        feasible: &'f mut Feasible<'g>,
        emit: &'f mut Emit<'h>,
        include: ElementSet,
        exclude: ElementSet,
    }

    impl Search<'_, '_, '_> {
        fn go(&mut self, elements: &[Element], witness: ElementSet) -> Result<ControlFlow<()>> {
            let Some((&e, rest)) = elements.split_first() else {
                return (self.emit)(&self.include);
            };
            let agrees = witness.contains(e);

            self.include.insert(e);
            let child = if agrees {
                Some(witness.clone())
            } else {
                (self.feasible)(&self.include, &self.exclude, &witness)?
            };
            if let Some(w) = child {
                if self.go(rest, w)?.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
            self.include.remove(e);

            self.exclude.insert(e);
            let child = if agrees {
                (self.feasible)(&self.include, &self.exclude, &witness)?
            } else {
                Some(witness)
            };
            let flow = match child {
                Some(w) => self.go(rest, w)?,
                None => ControlFlow::Continue(()),
            };
            self.exclude.remove(e);
            Ok(flow)
        }
    }

    Search {
        feasible,
        emit,
        include: ElementSet::new(),
        exclude: ElementSet::new(),
    }
    .go(elements, root)
    .map(|_| ())
}
