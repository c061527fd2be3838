# App data

app_name = "tempcause"
app_title = "Temporal Causes"
app_publisher = "Erick W.R."
app_description = "Temporal cause synthesis for reactive systems"
app_email = "erickkwr@gmail.com"
app_license = "mit"

# Hooks

cause_synthesizers = {
    "recurrence": "tempcause.synthesis.pipelines.synthesize_recurrence",
    "safety": "tempcause.synthesis.pipelines.synthesize_safety",
    "guarantee": "tempcause.synthesis.pipelines.synthesize_guarantee",
}

instance_generators = {
    "ln": "tempcause.generators.ln.gen_ln_instance",
    "complement": "tempcause.generators.encoding.gen_complementation_instance",
    "nfw": "tempcause.generators.encoding.gen_nfw_instance",
}
