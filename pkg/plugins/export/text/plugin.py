"""Plain-text export plugin"""

from typing import Any

from jinja2 import DictLoader, Environment, StrictUndefined

from src.core.plugin import ExportPlugin, Payload


TEMPLATES = {
    "report": """\
Invariants{% if meta.get('title') %}: {{ meta.title }}{% endif %}

  vertices                   {% for v in vertices %}({{ v[0] }}, {{ v[1] }}){% if not loop.last %} {% endif %}{% endfor %}
  area |P|                   {{ d.area }}
  lattice perimeter |∂P|     {{ d.perimeter }}
  interior barycenter        ({{ d.barycenter_interior | join(', ') }})
  boundary barycenter        ({{ d.barycenter_boundary | join(', ') }})
  displacement               ({{ d.displacement | join(', ') }})
  inertia                    [[{{ d.inertia[0] | join(', ') }}], [{{ d.inertia[1] | join(', ') }}]]
  Futaki invariant / π       ({{ d.futaki | join(', ') }})
  Futaki norm² / π²          {{ d.futaki_norm_sq_over_pi2 }}
  average scalar / π         {{ d.avg_hermitian_scalar_over_pi }}
  virtual action             {{ d.virtual_action }}
  Weyl lower bound           {{ '%.10g' | format(d.weyl_bound) }}
  simple Weyl bound          {{ '%.10g' | format(d.weyl_bound_simple) }}
""",
    "minimize": """\
Minimizer{% if d.surface %}: {{ d.surface }}{% endif %}

  action                     {{ '%.12f' | format(d.action) }}
  converged                  {{ 'yes' if d.converged else 'no' }}
  iterations                 {{ d.iterations }}
  gradient sup-norm          {{ '%.3e' | format(d.gradient_norm) }}
  Hessian eigenvalues        {% for e in d.hessian_eigenvalues %}{{ '%.6g' | format(e) }}{% if not loop.last %}, {% endif %}{% else %}(none, reduced cone is a point){% endfor %}
  displacement               ({{ '%.3e' | format(d.displacement[0]) }}, {{ '%.3e' | format(d.displacement[1]) }})
  Futaki norm² / π²          {{ '%.6g' | format(d.futaki_norm_sq_over_pi2) }}
  gauge-fixed support        {% for v in d['lambda'] %}{{ '%.9f' | format(v) }}{% if not loop.last %}, {% endif %}{% endfor %}
""",
    "multistart": """\
Multi-start minimizer

  best action                {{ '%.12f' | format(d.best.action) }}
  spread                     {{ '%.3e' | format(d.spread) }}
  starts converged           {{ d.converged | select | list | length }} / {{ d.converged | length }}
""",
    "scan": """\
Scan{% if d.surface %}: {{ d.surface }}{% endif %}

{{ '%-14s %-20s %-12s %-12s %-14s %-14s %s' | format('t', 'action', 'disp_x', 'disp_y', 'futaki_norm_sq', 'min_vertex', 'inside') }}
{% for r in d.rows %}{{ '%-14s %-20s %-12s %-12s %-14s %-14s %s' | format(r.t, r.action, r.disp_x, r.disp_y, r.futaki_norm_sq, r.min_vertex_scalar, r.inside_cone) }}
{% endfor %}""",
    "obstruct": """\
Einstein obstruction ({{ d.predicate }}){% if meta.get('title') %}: {{ meta.title }}{% endif %}

  lhs                        {{ d.lhs }}
  (3/2)c₁²                   {{ d.rhs }}
  margin                     {{ d.margin }}
  verdict                    {{ d.verdict }}
""",
    "appendix": """\
Nijenhuis energy, ε = {{ d.epsilon }}, k = {{ d.k }}, grid {{ d.grid_n }}

  quadrature                 {{ '%.12g' | format(d.energy_quadrature) }}
  closed form 2π²k²ε²        {{ '%.12g' | format(d.energy_closed_form) }}
  quoted 2π²k²ε⁴            {{ '%.12g' | format(d.energy_paper_expression) }}
  ratio quoted/measured      {{ '%.12g' | format(d.discrepancy_factor) }}
  bound on ∫ s dμ            {{ '%.12g' | format(d.scalar_bound) }}
""",
}


class TextExportPlugin(ExportPlugin):
    """Export plugin for human-readable summaries"""

    name = "text"
    description = "Aligned plain-text summary"

    def __init__(self):
        self.env = Environment(
            loader=DictLoader(TEMPLATES),
            undefined=StrictUndefined,
            keep_trailing_newline=True,
        )

    async def export(self, payload: Payload, metadata: dict[str, Any]) -> str:
        template = self.env.get_template(payload.kind)
        return template.render(
            d=payload.to_dict(),
            meta=metadata,
            vertices=getattr(payload, "vertices", None) or [],
        )
