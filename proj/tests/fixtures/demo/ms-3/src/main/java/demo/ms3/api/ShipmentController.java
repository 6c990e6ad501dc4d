package demo.ms3.api;

import demo.ms3.model.SupplierDto;
import org.springframework.web.bind.annotation.*;
import org.springframework.web.client.RestTemplate;

@RestController
public class ShipmentController {

    private final RestTemplate restTemplate = new RestTemplate();

    @GetMapping("/api/shipments/{id}/supplier")
    public SupplierDto supplierOf(@PathVariable String id) {
        String supplierId = lookup(id);
        return restTemplate.getForObject("http://ms-2/api/suppliers/" + supplierId, SupplierDto.class);
    }

    private String lookup(String id) {
        return id;
    }
}
