//! Compiles a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "tensor_atoms.h"

int main(void) {
    TaWeight *l = NULL, *m = NULL;
    TaLr *lr = NULL;
    char *dim = NULL, *json = NULL;
    bool eq = false;
    if (ta_weight_parse("9,7,3", &l) != TA_STATUS_OK) return 10;
    if (ta_dim(l, &dim) != TA_STATUS_OK || strcmp(dim, "60") != 0) return 11;
    ta_string_free(dim);
    ta_weight_free(l);
    if (ta_weight_parse("1,2", &l) != TA_STATUS_INVALID_INPUT) return 12;
    if (strlen(ta_last_error()) == 0) return 13;
    if (ta_weight_parse("2,1,0", &l) != TA_STATUS_OK) return 14;
    if (ta_weight_parse("1,1,0", &m) != TA_STATUS_OK) return 15;
    if (ta_check_identity(l, m, &eq) != TA_STATUS_OK || !eq) return 16;
    if (ta_lr_measure(l, m, &lr) != TA_STATUS_OK) return 17;
    if (ta_lr_to_json(lr, &json) != TA_STATUS_OK) return 18;
    printf("%zu %s\n", (size_t)ta_lr_len(lr), json);
    ta_string_free(json);
    ta_lr_free(lr);
    ta_weight_free(l);
    ta_weight_free(m);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libtensor_atoms_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let work = tempfile::tempdir().unwrap();
    let src = work.path().join("main.c");
    let exe = work.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    // vertical strips: (3,2,0), (3,1,1), (2,2,1) with dimensions 15, 6, 3 out of 8·3
    assert_eq!(
        text.trim_end(),
        r#"3 {"lambda":[2,1,0],"mu":[1,1,0],"terms":[{"nu":[2,2,1],"c":"1","atom":"1/8"},{"nu":[3,1,1],"c":"1","atom":"1/4"},{"nu":[3,2,0],"c":"1","atom":"5/8"}]}"#
    );
}
