import xml.etree.ElementTree as ET

from latcover.geom import regular
from latcover.lattice import has_covering_property
from latcover.criteria import verify_appendix
from latcover.render import overlay_svg, plot_margins, plot_overlay, plot_sweep
from latcover.steiner import steiner_x1

NS = "{http://www.w3.org/2000/svg}"


def test_overlay_is_valid_svg():
    K = regular(6, 1.0, 0.2)
    root = ET.fromstring(overlay_svg(K, steiner_x1(K).polygon, title="hex"))
    assert root.tag == NS + "svg"
    polys = root.findall(NS + "polygon")
    assert len(polys) == 2
    # y is flipped: the top vertex of the body has a negative pixel y
    ys = [float(p.split(",")[1]) for p in polys[1].get("points").split()]
    assert min(ys) < 0 < max(ys)
    x0, y0, w, h = map(float, root.get("viewBox").split())
    assert x0 % 100 == 0 and y0 % 100 == 0 and w % 100 == 0 and h % 100 == 0


def test_overlay_deterministic():
    K = regular(5)
    assert overlay_svg(K, steiner_x1(K).polygon) == overlay_svg(K, steiner_x1(K).polygon)


def test_plots(tmp_path):
    rep = has_covering_property(regular(4), sweep_count=16, grid=16, refine_iters=1)
    plot_sweep(rep, tmp_path / "s.png", label="H_4")
    K = regular(6, 1.0, 0.1)
    plot_overlay(K, steiner_x1(K).polygon, tmp_path / "o.png")
    plot_margins(verify_appendix(200), tmp_path / "m.svg")
    for name in ("s.png", "o.png", "m.svg"):
        assert (tmp_path / name).stat().st_size > 1000
