import pytest

HEADER = "p_a1,u_hat,v_hat,v_tilde_lo,v_tilde_hi,omega,breakpoint"

# A small but fully featured table: four grid rows, one interval-valued
# breakpoint row, one indifference breakpoint row.
SAMPLE_ROWS = [
    "0.0,6.0,6.0,5.5,5.5,5.5,",
    "0.25,4.0,4.5,4.2,4.2,4.2,",
    "0.5,2.0,3.0,2.5,2.5,2.5,",
    "1.0,2.0,2.0,1.8,1.8,1.8,",
    "0.75,1.5,1.2,0.9,1.6,0.9,pt2",
    "0.4,2.4,3.4,,,,p1",
]


@pytest.fixture
def write_csv(tmp_path):
    def _write(rows, header=HEADER, name="sweep.csv"):
        path = tmp_path / name
        path.write_text("\n".join([header, *rows]) + "\n")
        return str(path)

    return _write
