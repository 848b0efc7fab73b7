// temporary probe via the public API
use tenseroll_core::formfind::*;
use tenseroll_core::geometry::Screw;

fn main() {
    let net = CableNet::default_net(0.2015);
    for restarts in [1usize, 5] {
        let opts = FormFindOptions { restarts, ..Default::default() };
        let r = form_find(&net, &Screw::zero(), &opts);
        println!("restarts={restarts}: best={} E={:.15} |g|={:.3e} evals={} conv={}",
            r.best_restart, r.energy, r.grad_norm, r.evals, r.converged);
        for s in &r.restarts {
            println!("   restart {}: E={:.15} |g|={:.3e} evals={}", s.index, s.energy, s.grad_norm, s.evals);
        }
    }
}
