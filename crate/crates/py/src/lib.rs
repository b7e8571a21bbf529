use pyo3::prelude::*;

#[pymodule]
fn ffmds(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
